#pragma once

#include <algorithm>
#include <istream>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hyperdense/errors.hpp"
#include "hyperdense/rewards.hpp"

namespace hyperdense {

using NodeId = int;

struct Hyperedge {
  std::vector<NodeId> nodes;  // strictly increasing ids
  double weight = 1.0;
  RewardTable reward;  // length |nodes|+1 once attached

  int size() const { return static_cast<int>(nodes.size()); }
  bool operator==(const Hyperedge&) const = default;
};

// Immutable after construction; safe to share read-only across solver runs.
struct Hypergraph {
  int n = 0;
  std::vector<Hyperedge> edges;
  std::vector<std::string> tokens;       // original node names; empty when synthetic
  std::vector<int> labels;               // color class per node, -1 unlabeled; may be empty
  std::vector<std::string> color_names;  // color id -> name

  int max_edge_size() const {
    int k = 0;
    for (const auto& e : edges) k = std::max(k, e.size());
    return k;
  }
  bool operator==(const Hypergraph&) const = default;
};

struct ParseStats {
  std::size_t duplicate_node_tokens = 0;  // repeated tokens collapsed within a line
  std::size_t unknown_label_tokens = 0;   // label lines naming tokens absent from the edge file
};

// Edge file: one edge per line, comma-separated node tokens, optional
// " | <weight>" suffix, '#' begins a comment line. Tokens are interned to
// dense ids in first-appearance order.
inline Hypergraph parse_hypergraph(std::istream& edge_text, std::istream* label_text = nullptr,
                                   ParseStats* stats = nullptr) {
  Hypergraph h;
  std::unordered_map<std::string, NodeId> intern;
  ParseStats local;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(edge_text, line)) {
    ++lineno;
    std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;

    std::string_view token_part = s;
    Hyperedge edge;
    auto bar = s.find('|');
    if (bar != std::string_view::npos) {
      if (s.find('|', bar + 1) != std::string_view::npos) {
        throw ParseError(lineno, "more than one weight separator '|'");
      }
      token_part = s.substr(0, bar);
      edge.weight = detail::parse_double(s.substr(bar + 1), lineno, "weight");
      if (edge.weight < 0.0) throw ParseError(lineno, "negative edge weight");
    }

    std::string_view rest = token_part;
    while (true) {
      auto comma = rest.find(',');
      std::string_view field =
          detail::trim(comma == std::string_view::npos ? rest : rest.substr(0, comma));
      if (field.empty()) throw ParseError(lineno, "empty node token");
      auto [it, inserted] = intern.emplace(std::string(field), static_cast<NodeId>(intern.size()));
      NodeId id = it->second;
      if (std::find(edge.nodes.begin(), edge.nodes.end(), id) != edge.nodes.end()) {
        ++local.duplicate_node_tokens;
      } else {
        edge.nodes.push_back(id);
      }
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    std::sort(edge.nodes.begin(), edge.nodes.end());
    h.edges.push_back(std::move(edge));
  }
  if (h.edges.empty()) throw DataError("empty input: no edges");

  h.n = static_cast<int>(intern.size());
  h.tokens.resize(static_cast<std::size_t>(h.n));
  for (auto& [tok, id] : intern) h.tokens[static_cast<std::size_t>(id)] = tok;

  if (label_text != nullptr) {
    h.labels.assign(static_cast<std::size_t>(h.n), -1);
    std::unordered_map<std::string, int> colors;
    std::size_t label_lineno = 0;
    while (std::getline(*label_text, line)) {
      ++label_lineno;
      std::string_view s = detail::trim(line);
      if (s.empty() || s.front() == '#') continue;
      auto comma = s.find(',');
      if (comma == std::string_view::npos || s.find(',', comma + 1) != std::string_view::npos) {
        throw ParseError(label_lineno, "expected 'token,color_name'");
      }
      std::string token(detail::trim(s.substr(0, comma)));
      std::string color(detail::trim(s.substr(comma + 1)));
      if (token.empty() || color.empty()) throw ParseError(label_lineno, "empty field");
      auto node = intern.find(token);
      if (node == intern.end()) {
        ++local.unknown_label_tokens;
        continue;
      }
      auto [it, inserted] = colors.emplace(color, static_cast<int>(colors.size()));
      h.labels[static_cast<std::size_t>(node->second)] = it->second;
    }
    h.color_names.resize(colors.size());
    for (auto& [name, id] : colors) h.color_names[static_cast<std::size_t>(id)] = name;
  }

  if (stats != nullptr) *stats = local;
  return h;
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[parent_[static_cast<std::size_t>(x)]];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

// Drops self-loops (size-1 edges) and dangling nodes, keeps the largest
// connected component of the clique-expansion adjacency (size in nodes,
// ties broken by smallest contained node id), and re-densifies ids.
inline Hypergraph preprocess(const Hypergraph& h) {
  std::vector<const Hyperedge*> kept;
  for (const auto& e : h.edges) {
    if (e.size() >= 2) kept.push_back(&e);
  }
  if (kept.empty()) throw DataError("no edges after preprocessing");

  detail::UnionFind uf(h.n);
  for (const Hyperedge* e : kept) {
    for (std::size_t i = 1; i < e->nodes.size(); ++i) uf.unite(e->nodes[0], e->nodes[i]);
  }

  std::vector<bool> covered(static_cast<std::size_t>(h.n), false);
  for (const Hyperedge* e : kept) {
    for (NodeId v : e->nodes) covered[static_cast<std::size_t>(v)] = true;
  }

  // Component roots are minimum ids, so scanning roots in ascending order and
  // keeping the first maximum applies the smallest-contained-id tie-break.
  std::vector<int> component_size(static_cast<std::size_t>(h.n), 0);
  for (NodeId v = 0; v < h.n; ++v) {
    if (covered[static_cast<std::size_t>(v)]) ++component_size[static_cast<std::size_t>(uf.find(v))];
  }
  int best_root = -1;
  for (NodeId v = 0; v < h.n; ++v) {
    if (component_size[static_cast<std::size_t>(v)] == 0) continue;
    if (best_root == -1 || component_size[static_cast<std::size_t>(v)] >
                               component_size[static_cast<std::size_t>(best_root)]) {
      best_root = v;
    }
  }

  std::vector<NodeId> remap(static_cast<std::size_t>(h.n), -1);
  Hypergraph out;
  for (NodeId v = 0; v < h.n; ++v) {
    if (covered[static_cast<std::size_t>(v)] && uf.find(v) == best_root) {
      remap[static_cast<std::size_t>(v)] = out.n++;
      if (!h.tokens.empty()) out.tokens.push_back(h.tokens[static_cast<std::size_t>(v)]);
      if (!h.labels.empty()) out.labels.push_back(h.labels[static_cast<std::size_t>(v)]);
    }
  }
  out.color_names = h.color_names;
  for (const Hyperedge* e : kept) {
    if (remap[static_cast<std::size_t>(e->nodes[0])] < 0) continue;
    Hyperedge copy = *e;
    for (NodeId& v : copy.nodes) v = remap[static_cast<std::size_t>(v)];
    out.edges.push_back(std::move(copy));
  }
  return out;
}

namespace detail {

// Validates ids and marks membership; returns |S| counting distinct ids.
inline int subset_mask(const Hypergraph& h, std::span<const NodeId> s, std::vector<bool>& mask) {
  mask.assign(static_cast<std::size_t>(h.n), false);
  int count = 0;
  for (NodeId v : s) {
    if (v < 0 || v >= h.n) throw DataError("node id out of range: " + std::to_string(v));
    if (!mask[static_cast<std::size_t>(v)]) {
      mask[static_cast<std::size_t>(v)] = true;
      ++count;
    }
  }
  return count;
}

inline int intersection_size(const Hyperedge& e, const std::vector<bool>& mask) {
  int c = 0;
  for (NodeId v : e.nodes) c += mask[static_cast<std::size_t>(v)] ? 1 : 0;
  return c;
}

inline std::vector<std::vector<int>> incidence_lists(const Hypergraph& h) {
  std::vector<std::vector<int>> inc(static_cast<std::size_t>(h.n));
  for (std::size_t ei = 0; ei < h.edges.size(); ++ei) {
    for (NodeId v : h.edges[ei].nodes) inc[static_cast<std::size_t>(v)].push_back(static_cast<int>(ei));
  }
  return inc;
}

}  // namespace detail

inline double total_reward(const Hypergraph& h, std::span<const NodeId> s) {
  std::vector<bool> mask;
  detail::subset_mask(h, s, mask);
  double f = 0.0;
  for (const auto& e : h.edges) {
    if (!e.reward.attached()) throw DataError("reward table not attached");
    f += e.weight * e.reward(detail::intersection_size(e, mask));
  }
  return f;
}

// Gamma(S) = f(S)/|S|, with Gamma(empty) = 0.
inline double density(const Hypergraph& h, std::span<const NodeId> s) {
  std::vector<bool> mask;
  int count = detail::subset_mask(h, s, mask);
  if (count == 0) return 0.0;
  double f = 0.0;
  for (const auto& e : h.edges) {
    if (!e.reward.attached()) throw DataError("reward table not attached");
    f += e.weight * e.reward(detail::intersection_size(e, mask));
  }
  return f / count;
}

// Edge-composition summary of a node set: how many edges cross the standard
// intersection thresholds, plus the density.
struct SubsetStats {
  int size = 0;
  long contained = 0;     // |e ∩ S| = |e|
  long atleast_two = 0;   // |e ∩ S| >= 2
  long atleast_half = 0;  // |e ∩ S| >= ceil(|e|/2)
  long all_but_one = 0;   // |e ∩ S| >= |e|-1
  double density = 0.0;
};

inline SubsetStats subset_stats(const Hypergraph& h, std::span<const NodeId> s) {
  std::vector<bool> mask;
  SubsetStats st;
  st.size = detail::subset_mask(h, s, mask);
  if (st.size == 0) throw DataError("subset_stats requires a nonempty set");
  double f = 0.0;
  for (const auto& e : h.edges) {
    int c = detail::intersection_size(e, mask);
    int m = e.size();
    if (c == m) ++st.contained;
    if (c >= 2) ++st.atleast_two;
    if (c >= (m + 1) / 2) ++st.atleast_half;
    if (c >= m - 1) ++st.all_but_one;
    if (e.reward.attached()) f += e.weight * e.reward(c);
  }
  st.density = f / st.size;
  return st;
}

inline void attach_rewards(Hypergraph& h, RewardFamily family) {
  for (auto& e : h.edges) e.reward = builtin_reward(family, e.size());
}

inline void attach_rewards(Hypergraph& h, const CustomRewards& custom) {
  for (auto& e : h.edges) {
    auto it = custom.by_size.find(e.size());
    if (it == custom.by_size.end()) {
      throw DataError("no custom reward table for edge size " + std::to_string(e.size()));
    }
    e.reward = it->second;
  }
}

// Multiplies each reward table by its edge weight and resets weights to 1;
// solvers that read only the tables then handle weighted instances correctly.
inline void fold_weights(Hypergraph& h) {
  for (auto& e : h.edges) {
    e.reward = fold_weight(e.weight, e.reward);
    e.weight = 1.0;
  }
}

// Per-edge table with the weight folded in, whether or not the caller folded.
inline RewardTable effective_table(const Hyperedge& e) {
  if (!e.reward.attached()) throw DataError("reward table not attached");
  return e.weight == 1.0 ? e.reward : fold_weight(e.weight, e.reward);
}

inline std::vector<RationalTable> snap_rewards(const Hypergraph& h,
                                               std::int64_t denominator = kSnapDenominator) {
  std::vector<RationalTable> out;
  out.reserve(h.edges.size());
  for (const auto& e : h.edges) {
    if (!e.reward.attached()) throw DataError("reward table not attached");
    out.push_back(snap_table(fold_weight(e.weight, e.reward), denominator));
  }
  return out;
}

// Exact f(S) under explicit rational tables (weights must already be folded
// into the tables, which snap_rewards does).
inline Rational total_reward_exact(const Hypergraph& h, std::span<const RationalTable> tables,
                                   std::span<const NodeId> s) {
  std::vector<bool> mask;
  detail::subset_mask(h, s, mask);
  Rational f = 0;
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    f += tables[i][static_cast<std::size_t>(detail::intersection_size(h.edges[i], mask))];
  }
  return f;
}

inline Rational density_exact(const Hypergraph& h, std::span<const RationalTable> tables,
                              std::span<const NodeId> s) {
  std::vector<bool> mask;
  int count = detail::subset_mask(h, s, mask);
  if (count == 0) return Rational(0);
  Rational f = 0;
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    f += tables[i][static_cast<std::size_t>(detail::intersection_size(h.edges[i], mask))];
  }
  return f / count;
}

}  // namespace hyperdense

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "hyperdense/errors.hpp"
#include "hyperdense/hypergraph.hpp"
#include "hyperdense/peel.hpp"

namespace hyperdense {

struct ContractResult {
  Hypergraph graph;
  std::vector<NodeId> kept;  // kept[new id] = id in the contracted-from graph
};

// Removes the nodes in `absorbed` while crediting each surviving edge for its
// absorbed members: the new reward is r'(i) = r(i + j) - r(j) with
// j = |e ∩ absorbed|. Edges absorbed entirely are dropped; surviving node ids
// are re-densified in ascending order (see `kept` for the mapping).
inline ContractResult contract_mapped(const Hypergraph& h, std::span<const NodeId> absorbed) {
  std::vector<bool> mask;
  int u_count = detail::subset_mask(h, absorbed, mask);
  if (u_count == h.n) throw DataError("contraction would remove every node");

  ContractResult out;
  std::vector<NodeId> remap(static_cast<std::size_t>(h.n), -1);
  for (NodeId v = 0; v < h.n; ++v) {
    if (!mask[static_cast<std::size_t>(v)]) {
      remap[static_cast<std::size_t>(v)] = out.graph.n++;
      out.kept.push_back(v);
      if (!h.tokens.empty()) out.graph.tokens.push_back(h.tokens[static_cast<std::size_t>(v)]);
      if (!h.labels.empty()) out.graph.labels.push_back(h.labels[static_cast<std::size_t>(v)]);
    }
  }
  out.graph.color_names = h.color_names;

  for (const auto& e : h.edges) {
    Hyperedge contracted;
    int absorbed_count = 0;
    for (NodeId v : e.nodes) {
      if (mask[static_cast<std::size_t>(v)]) {
        ++absorbed_count;
      } else {
        contracted.nodes.push_back(remap[static_cast<std::size_t>(v)]);
      }
    }
    if (contracted.nodes.empty()) continue;
    contracted.weight = e.weight;
    if (e.reward.attached()) contracted.reward = contract_reward(e.reward, absorbed_count);
    out.graph.edges.push_back(std::move(contracted));
  }
  return out;
}

inline Hypergraph contract(const Hypergraph& h, std::span<const NodeId> absorbed) {
  return contract_mapped(h, absorbed).graph;
}

// Any unconstrained solver usable inside the constrained loops; returns its
// chosen set in the id space of the hypergraph it is given.
using InnerSolver = std::function<std::vector<NodeId>(const Hypergraph&)>;

inline InnerSolver peel_zero_solver() {
  return [](const Hypergraph& h) { return peel(h, PeelStrategy::Zero).best_set; };
}

namespace detail {

// Grows `base` to `target` nodes, repeatedly adding the eligible node with
// the largest marginal gain f(S + v) - f(S); ties go to the smallest id.
// Padding with arbitrary nodes would already preserve the guarantees, so the
// greedy choice only helps.
inline std::vector<NodeId> pad_greedy(const Hypergraph& h, std::vector<NodeId> base,
                                      std::size_t target,
                                      const std::function<bool(NodeId)>& eligible = {}) {
  std::vector<bool> mask;
  subset_mask(h, base, mask);
  std::vector<int> cnt(h.edges.size());
  for (std::size_t ei = 0; ei < h.edges.size(); ++ei) {
    cnt[ei] = intersection_size(h.edges[ei], mask);
  }
  auto inc = incidence_lists(h);
  while (base.size() < target) {
    NodeId best = -1;
    double best_gain = 0.0;
    for (NodeId v = 0; v < h.n; ++v) {
      if (mask[static_cast<std::size_t>(v)]) continue;
      if (eligible && !eligible(v)) continue;
      double gain = 0.0;
      for (int ei : inc[static_cast<std::size_t>(v)]) {
        const auto& e = h.edges[static_cast<std::size_t>(ei)];
        gain += e.weight * (e.reward(cnt[static_cast<std::size_t>(ei)] + 1) -
                            e.reward(cnt[static_cast<std::size_t>(ei)]));
      }
      if (best == -1 || gain > best_gain) {
        best = v;
        best_gain = gain;
      }
    }
    if (best == -1) throw DataError("not enough eligible nodes to pad the solution");
    mask[static_cast<std::size_t>(best)] = true;
    base.push_back(best);
    for (int ei : inc[static_cast<std::size_t>(best)]) ++cnt[static_cast<std::size_t>(ei)];
  }
  std::sort(base.begin(), base.end());
  return base;
}

}  // namespace detail

// Density under a size floor: repeatedly solve, contract the winner away,
// and accumulate until the union is large enough; then compare against the
// previous-round union padded to exactly ell nodes. With an
// alpha-approximate inner solver the result is alpha/(alpha+1)-approximate,
// hence 1/(k+1) with bound-function peeling.
inline std::vector<NodeId> card_swamp(const Hypergraph& h, int ell,
                                      const InnerSolver& inner = peel_zero_solver()) {
  if (ell < 1 || ell > h.n) throw DataError("size floor must be between 1 and n");

  std::vector<std::vector<NodeId>> rounds;  // each in original ids
  std::vector<NodeId> accumulated;
  Hypergraph current = h;
  std::vector<NodeId> to_original(static_cast<std::size_t>(h.n));
  for (NodeId v = 0; v < h.n; ++v) to_original[static_cast<std::size_t>(v)] = v;

  while (static_cast<int>(accumulated.size()) < ell) {
    std::vector<NodeId> chosen = inner(current);
    if (chosen.empty()) throw DataError("inner solver returned an empty set");
    std::vector<NodeId> original_ids;
    original_ids.reserve(chosen.size());
    for (NodeId v : chosen) original_ids.push_back(to_original[static_cast<std::size_t>(v)]);
    std::sort(original_ids.begin(), original_ids.end());
    rounds.push_back(original_ids);
    accumulated.insert(accumulated.end(), original_ids.begin(), original_ids.end());

    if (static_cast<int>(accumulated.size()) >= ell) break;
    ContractResult contracted = contract_mapped(current, chosen);
    std::vector<NodeId> next_map;
    next_map.reserve(contracted.kept.size());
    for (NodeId v : contracted.kept) next_map.push_back(to_original[static_cast<std::size_t>(v)]);
    current = std::move(contracted.graph);
    to_original = std::move(next_map);
  }
  std::sort(accumulated.begin(), accumulated.end());

  // Union of all rounds but the last, padded to exactly ell nodes.
  std::vector<NodeId> prefix;
  for (std::size_t i = 0; i + 1 < rounds.size(); ++i) {
    prefix.insert(prefix.end(), rounds[i].begin(), rounds[i].end());
  }
  std::vector<NodeId> padded = detail::pad_greedy(h, std::move(prefix), static_cast<std::size_t>(ell));

  return density(h, accumulated) >= density(h, padded) ? accumulated : padded;
}

// Per-class size floors: solve card-swamp at the total floor, then pad each
// deficient class. min_per_color maps color id -> floor; missing colors mean
// no constraint.
inline std::vector<NodeId> fair_swamp(const Hypergraph& h, const std::map<int, int>& min_per_color,
                                      const InnerSolver& inner = peel_zero_solver()) {
  if (h.labels.empty()) throw DataError("fair solve requires node labels");
  std::vector<int> class_size;
  for (NodeId v = 0; v < h.n; ++v) {
    int c = h.labels[static_cast<std::size_t>(v)];
    if (c < 0) throw DataError("fair solve requires every node to be labeled");
    if (c >= static_cast<int>(class_size.size())) class_size.resize(static_cast<std::size_t>(c) + 1, 0);
    ++class_size[static_cast<std::size_t>(c)];
  }

  long total_floor = 0;
  for (const auto& [color, floor] : min_per_color) {
    if (floor < 0) throw DataError("class floor must be nonnegative");
    if (floor == 0) continue;
    int have = color >= 0 && color < static_cast<int>(class_size.size())
                   ? class_size[static_cast<std::size_t>(color)]
                   : 0;
    if (have < floor) {
      throw DataError("infeasible class floor: color " + std::to_string(color) + " has " +
                      std::to_string(have) + " nodes, needs " + std::to_string(floor));
    }
    total_floor += floor;
  }
  if (total_floor > h.n) throw DataError("class floors exceed the node count");
  if (total_floor == 0) return inner(h);

  std::vector<NodeId> s = card_swamp(h, static_cast<int>(total_floor), inner);

  std::vector<int> have(class_size.size(), 0);
  for (NodeId v : s) ++have[static_cast<std::size_t>(h.labels[static_cast<std::size_t>(v)])];
  for (const auto& [color, floor] : min_per_color) {
    int deficit = floor - (color < static_cast<int>(have.size()) ? have[static_cast<std::size_t>(color)] : 0);
    if (deficit <= 0) continue;
    std::size_t target = s.size() + static_cast<std::size_t>(deficit);
    s = detail::pad_greedy(h, std::move(s), target,
                           [&](NodeId v) { return h.labels[static_cast<std::size_t>(v)] == color; });
  }
  return s;
}

}  // namespace hyperdense

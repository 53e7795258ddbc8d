#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperdense/detail/addressable_heap.hpp"
#include "hyperdense/errors.hpp"
#include "hyperdense/hypergraph.hpp"

namespace hyperdense {

// Per-edge bound function s(0..m-1) subtracted inside the peeling score.
struct BoundTable {
  std::vector<double> values;

  double operator()(int i) const { return values[static_cast<std::size_t>(i)]; }
  bool operator==(const BoundTable&) const = default;
};

// s = 0. Valid for every monotone reward table.
inline BoundTable bound_zero(const RewardTable& t) {
  return BoundTable{std::vector<double>(static_cast<std::size_t>(t.size()), 0.0)};
}

// s(i) = r(i+1) - max_{0<=j<=i} (r(j+1) - r(j)), the pointwise-largest valid
// bound. Coincides with r on 0..m-1 when r is convex.
inline BoundTable bound_max(const RewardTable& t) {
  BoundTable s;
  s.values.reserve(static_cast<std::size_t>(t.size()));
  double max_delta = 0.0;
  for (int i = 0; i < t.size(); ++i) {
    max_delta = std::max(max_delta, t(i + 1) - t(i));
    s.values.push_back(t(i + 1) - max_delta);
  }
  return s;
}

// s(i) = r(i): reproduces the classical greedy peeling. Valid only for
// convex tables.
inline BoundTable bound_greedy(const RewardTable& t) {
  BoundTable s;
  s.values.assign(t.values.begin(), t.values.end() - 1);
  return s;
}

// Checks the two validity conditions that make the peeled solution carry the
// 1/k guarantee: 0 <= s(i) <= r(i), and r(i) - s(i-1) <= r(i+1) - s(i).
// nullopt when valid.
inline std::optional<std::string> validate_bound(const RewardTable& t, const BoundTable& s) {
  int m = t.size();
  if (static_cast<int>(s.values.size()) != m) return "bound length must equal edge size";
  double tol = 1e-12 * std::max(1.0, t.values.back());
  for (int i = 0; i < m; ++i) {
    if (s(i) < -tol) return "s(" + std::to_string(i) + ") is negative";
    if (s(i) > t(i) + tol) return "s(" + std::to_string(i) + ") exceeds r(" + std::to_string(i) + ")";
  }
  for (int i = 1; i <= m - 1; ++i) {
    if (t(i) - s(i - 1) > t(i + 1) - s(i) + tol) {
      return "monotone-gap condition fails at i=" + std::to_string(i);
    }
  }
  return std::nullopt;
}

enum class PeelStrategy { Zero, Max, Greedy };

enum class DegreeMode {
  Contained,     // score counts edges fully inside the surviving set
  Intersecting,  // score counts incident edges with any surviving node
};

struct PeelResult {
  std::vector<NodeId> best_set;
  double best_density = 0.0;
  std::vector<NodeId> removal_order;
  std::vector<double> density_trace;  // Gamma(X) after each removal; last is 0
};

namespace detail {

// Shared peeling loop. score_terms[e][c] is edge e's contribution to the
// score of each of its surviving members while |e ∩ X| = c (index 0 unused).
// Density is always evaluated with the true weighted rewards. Removing v
// touches only nodes sharing an edge with v, so maintenance is
// O(k·deg(v)·log n) per step.
inline PeelResult peel_loop(const Hypergraph& h,
                            const std::vector<std::vector<double>>& score_terms) {
  if (h.n == 0) throw DataError("cannot peel an empty hypergraph");
  std::size_t n = static_cast<std::size_t>(h.n);
  std::size_t m = h.edges.size();

  // CSR incidence: node -> indices of edges containing it.
  std::vector<int> inc_offset(n + 1, 0);
  for (const auto& e : h.edges) {
    for (NodeId v : e.nodes) ++inc_offset[static_cast<std::size_t>(v) + 1];
  }
  for (std::size_t i = 0; i < n; ++i) inc_offset[i + 1] += inc_offset[i];
  std::vector<int> inc(static_cast<std::size_t>(inc_offset[n]));
  {
    std::vector<int> cursor(inc_offset.begin(), inc_offset.end() - 1);
    for (std::size_t ei = 0; ei < m; ++ei) {
      for (NodeId v : h.edges[ei].nodes) inc[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = static_cast<int>(ei);
    }
  }

  std::vector<int> cnt(m);
  double f = 0.0;
  for (std::size_t ei = 0; ei < m; ++ei) {
    const auto& e = h.edges[ei];
    if (!e.reward.attached()) throw DataError("reward table not attached");
    cnt[ei] = e.size();
    f += e.weight * e.reward(e.size());
  }

  std::vector<double> score(n, 0.0);
  for (std::size_t ei = 0; ei < m; ++ei) {
    double term = score_terms[ei][static_cast<std::size_t>(cnt[ei])];
    for (NodeId v : h.edges[ei].nodes) score[static_cast<std::size_t>(v)] += term;
  }

  detail::AddressableMinHeap heap(score);
  std::vector<bool> alive(n, true);
  std::vector<double> delta(n, 0.0);
  std::vector<int> touched;

  PeelResult result;
  result.removal_order.reserve(n);
  result.density_trace.reserve(n);
  double best = f / static_cast<double>(h.n);  // Gamma(V) seeds the best set
  std::size_t best_removals = 0;

  std::size_t remaining = n;
  while (!heap.empty()) {
    int v = heap.pop();
    alive[static_cast<std::size_t>(v)] = false;
    result.removal_order.push_back(v);
    --remaining;

    touched.clear();
    for (int idx = inc_offset[static_cast<std::size_t>(v)]; idx < inc_offset[static_cast<std::size_t>(v) + 1]; ++idx) {
      int ei = inc[static_cast<std::size_t>(idx)];
      int c = cnt[static_cast<std::size_t>(ei)];
      if (c == 0) continue;  // edge already retired
      const auto& e = h.edges[static_cast<std::size_t>(ei)];
      double old_term = score_terms[static_cast<std::size_t>(ei)][static_cast<std::size_t>(c)];
      double new_term = c >= 2 ? score_terms[static_cast<std::size_t>(ei)][static_cast<std::size_t>(c) - 1] : 0.0;
      if (old_term != new_term) {
        for (NodeId u : e.nodes) {
          if (!alive[static_cast<std::size_t>(u)]) continue;
          if (delta[static_cast<std::size_t>(u)] == 0.0) touched.push_back(u);
          delta[static_cast<std::size_t>(u)] += new_term - old_term;
        }
      }
      f += e.weight * (e.reward(c - 1) - e.reward(c));
      cnt[static_cast<std::size_t>(ei)] = c - 1;
    }
    for (int u : touched) {
      if (delta[static_cast<std::size_t>(u)] != 0.0) {
        heap.update(u, heap.key(u) + delta[static_cast<std::size_t>(u)]);
      }
      delta[static_cast<std::size_t>(u)] = 0.0;
    }

    double gamma = remaining > 0 ? f / static_cast<double>(remaining) : 0.0;
    result.density_trace.push_back(gamma);
    // The >= keeps later (smaller) tied sets, but the empty set never wins.
    if (remaining > 0 && gamma >= best) {
      best = gamma;
      best_removals = result.removal_order.size();
    }
  }

  result.best_density = best;
  std::vector<bool> removed(n, false);
  for (std::size_t i = 0; i < best_removals; ++i) {
    removed[static_cast<std::size_t>(result.removal_order[i])] = true;
  }
  for (NodeId v = 0; v < h.n; ++v) {
    if (!removed[static_cast<std::size_t>(v)]) result.best_set.push_back(v);
  }
  return result;
}

inline BoundTable bound_for(const RewardTable& t, PeelStrategy strategy) {
  switch (strategy) {
    case PeelStrategy::Zero: return bound_zero(t);
    case PeelStrategy::Max: return bound_max(t);
    case PeelStrategy::Greedy: return bound_greedy(t);
  }
  throw DataError("unknown peel strategy");
}

}  // namespace detail

// Bound-function peeling: repeatedly removes the node minimizing
// sum_{e∋u} r_e(|e∩X|) - s_e(|e∩X|-1), recording Gamma after each removal
// and returning the best intermediate set. Argmin ties break to the
// smallest node id.
inline PeelResult peel(const Hypergraph& h, std::span<const BoundTable> bounds) {
  if (bounds.size() != h.edges.size()) throw DataError("one bound table per edge required");
  std::vector<std::vector<double>> terms(h.edges.size());
  for (std::size_t ei = 0; ei < h.edges.size(); ++ei) {
    RewardTable t = effective_table(h.edges[ei]);
    const BoundTable& s = bounds[ei];
    if (static_cast<int>(s.values.size()) != t.size()) {
      throw DataError("bound length must equal edge size");
    }
    auto& term = terms[ei];
    term.assign(t.values.size(), 0.0);
    for (int c = 1; c <= t.size(); ++c) term[static_cast<std::size_t>(c)] = t(c) - s(c - 1);
  }
  return detail::peel_loop(h, terms);
}

inline PeelResult peel(const Hypergraph& h, PeelStrategy strategy) {
  std::vector<BoundTable> bounds;
  bounds.reserve(h.edges.size());
  for (const auto& e : h.edges) bounds.push_back(detail::bound_for(effective_table(e), strategy));
  return peel(h, bounds);
}

// Classical degree peeling: the score of u counts incident edges fully
// contained in the surviving set (or, in Intersecting mode, incident edges
// with any surviving node, which reduces to the static degree). Densities in
// the trace still use the true rewards.
inline PeelResult peel_degree(const Hypergraph& h, DegreeMode mode = DegreeMode::Contained) {
  std::vector<std::vector<double>> terms(h.edges.size());
  for (std::size_t ei = 0; ei < h.edges.size(); ++ei) {
    int m = h.edges[ei].size();
    terms[ei].assign(static_cast<std::size_t>(m) + 1, mode == DegreeMode::Intersecting ? 1.0 : 0.0);
    terms[ei][0] = 0.0;
    if (mode == DegreeMode::Contained) terms[ei][static_cast<std::size_t>(m)] = 1.0;
  }
  return detail::peel_loop(h, terms);
}

// True when every edge's bound for the strategy passes validate_bound, i.e.
// the run carries the 1/k guarantee.
inline bool bounds_valid(const Hypergraph& h, PeelStrategy strategy) {
  for (const auto& e : h.edges) {
    RewardTable t = effective_table(e);
    if (validate_bound(t, detail::bound_for(t, strategy))) return false;
  }
  return true;
}

}  // namespace hyperdense

#pragma once

#include <map>
#include <span>
#include <vector>

#include "hyperdense/errors.hpp"
#include "hyperdense/hypergraph.hpp"
#include "hyperdense/rational.hpp"
#include "hyperdense/rewards.hpp"

namespace hyperdense {

// Lower convex hull of a reward table, kept exact. hull(i) <= r(i) with
// equality at every breakpoint, and r(i) <= rho * hull(i) wherever r(i) > 0.
struct ConvexProjection {
  RationalTable hull;            // r̂(0..m)
  std::vector<int> breakpoints;  // 0 = t_0 < t_1 < ... = m
  Rational rho;                  // max_i r(i)/r̂(i), >= 1; 1 for convex input
};

// Walks from each breakpoint to the point reachable with the smallest slope
// (ties to the farthest point, which merges collinear segments) and fills the
// hull linearly in between.
inline ConvexProjection lower_convex_hull(const RationalTable& r) {
  int m = static_cast<int>(r.size()) - 1;
  if (m < 0 || r[0] != 0) throw DataError("reward table must start at r(0) = 0");
  for (int i = 1; i <= m; ++i) {
    if (r[static_cast<std::size_t>(i)] < r[static_cast<std::size_t>(i) - 1]) {
      throw DataError("reward table must be monotone");
    }
  }

  ConvexProjection out;
  out.hull.assign(r.size(), Rational(0));
  out.breakpoints.push_back(0);
  int t = 0;
  while (t < m) {
    int best_j = t + 1;
    Rational best_slope = r[static_cast<std::size_t>(t) + 1] - r[static_cast<std::size_t>(t)];
    for (int j = t + 2; j <= m; ++j) {
      Rational slope = (r[static_cast<std::size_t>(j)] - r[static_cast<std::size_t>(t)]) / (j - t);
      if (slope <= best_slope) {
        best_slope = slope;
        best_j = j;
      }
    }
    for (int j = t + 1; j <= best_j; ++j) {
      out.hull[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(t)] + best_slope * (j - t);
    }
    out.breakpoints.push_back(best_j);
    t = best_j;
  }

  out.rho = 1;
  for (int i = 1; i <= m; ++i) {
    if (r[static_cast<std::size_t>(i)] > 0) {
      Rational ratio = r[static_cast<std::size_t>(i)] / out.hull[static_cast<std::size_t>(i)];
      if (ratio > out.rho) out.rho = ratio;
    }
  }
  return out;
}

inline ConvexProjection lower_convex_hull(const RewardTable& t,
                                          std::int64_t denominator = kSnapDenominator) {
  return lower_convex_hull(snap_table(t, denominator));
}

// rho = max_{i : r(i) > 0} r(i)/hull(i), with 0/0 counted as 1.
inline Rational approx_ratio(const RationalTable& r, const ConvexProjection& projection) {
  Rational rho = 1;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i] > 0) {
      Rational ratio = r[i] / projection.hull[i];
      if (ratio > rho) rho = ratio;
    }
  }
  return rho;
}

// A hypergraph whose rewards were replaced by their lower convex hulls. The
// exact tables carry the folded weights, so the flow solver consumes them
// directly; the double tables serve the peeling pipeline.
struct ProjectedHypergraph {
  Hypergraph graph;
  std::vector<RationalTable> exact_rewards;
  Rational rho;  // max per-edge certificate

  double rho_double() const { return to_double(rho); }
};

inline ProjectedHypergraph project_hypergraph(const Hypergraph& h,
                                              std::int64_t denominator = kSnapDenominator) {
  ProjectedHypergraph out;
  out.graph = h;
  out.exact_rewards.reserve(h.edges.size());
  out.rho = 1;
  std::map<RationalTable, ConvexProjection> memo;
  for (auto& e : out.graph.edges) {
    RationalTable snapped = snap_table(fold_weight(e.weight, e.reward), denominator);
    auto it = memo.find(snapped);
    if (it == memo.end()) it = memo.emplace(snapped, lower_convex_hull(snapped)).first;
    const ConvexProjection& proj = it->second;
    if (proj.rho > out.rho) out.rho = proj.rho;
    out.exact_rewards.push_back(proj.hull);
    e.reward = to_double_table(proj.hull);
    e.weight = 1.0;
  }
  return out;
}

}  // namespace hyperdense

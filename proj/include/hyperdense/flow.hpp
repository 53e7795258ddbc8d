#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hyperdense/detail/dinic.hpp"
#include "hyperdense/errors.hpp"
#include "hyperdense/exact.hpp"
#include "hyperdense/hypergraph.hpp"
#include "hyperdense/project.hpp"
#include "hyperdense/rational.hpp"

namespace hyperdense {

// Writes a convex table as a nonnegative combination of hinge terms:
// r(j) = sum_t lambda(t) * max(0, j - t). lambda(t) >= 0 is exactly
// convexity, so this doubles as the convexity gate of the flow path.
struct HingeDecomposition {
  std::vector<Rational> lambda;  // lambda(0..m-1)
};

inline HingeDecomposition hinge_decompose(const RationalTable& r) {
  int m = static_cast<int>(r.size()) - 1;
  if (m < 0 || r[0] != 0) throw DataError("reward table must start at r(0) = 0");
  HingeDecomposition out;
  out.lambda.reserve(static_cast<std::size_t>(m));
  Rational prev_delta = 0;
  for (int t = 0; t < m; ++t) {
    Rational delta = r[static_cast<std::size_t>(t) + 1] - r[static_cast<std::size_t>(t)];
    Rational lambda = delta - prev_delta;
    if (lambda < 0) {
      throw DataError("reward table is not convex; the flow oracle requires convex rewards");
    }
    out.lambda.push_back(lambda);
    prev_delta = delta;
  }
  return out;
}

// Flow network deciding max_S f(S) - alpha*|S|. One vertex per hypergraph
// node and one per positive hinge term; all capacities are rationals scaled
// to integers by the least common multiple of their denominators.
//
//   source -> hinge(e,t)  capacity lambda * (|e| - t)
//   hinge(e,t) -> v in e  capacity lambda
//   v -> sink             capacity alpha
//
// max_S f(S) - alpha*|S| = (total source capacity - mincut) / scale, and the
// source side of a min cut restricted to node vertices attains it.
struct CutNetwork {
  struct Hinge {
    std::size_t edge;
    int offset;                 // t in max(0, |e ∩ S| - t)
    BigInt capacity;            // scaled lambda * (|e| - t)
    BigInt lambda;              // scaled lambda
    std::vector<NodeId> members;
  };

  int node_count = 0;
  std::vector<Hinge> hinges;
  BigInt sink_capacity;  // scaled alpha, per node
  BigInt scale;
  BigInt total_source_capacity;
};

inline CutNetwork build_cut_network(const Hypergraph& h, std::span<const RationalTable> tables,
                                    const Rational& alpha) {
  if (tables.size() != h.edges.size()) throw DataError("one exact table per edge required");
  if (alpha < 0) throw DataError("alpha must be nonnegative");

  std::vector<HingeDecomposition> hinges;
  hinges.reserve(tables.size());
  BigInt scale = BigInt(denominator(alpha));
  for (const auto& t : tables) {
    hinges.push_back(hinge_decompose(t));
    scale = boost::multiprecision::lcm(scale, denominator_lcm(hinges.back().lambda));
  }

  CutNetwork net;
  net.node_count = h.n;
  net.scale = scale;
  net.sink_capacity = scale_to_integer(alpha, scale);
  net.total_source_capacity = 0;
  for (std::size_t ei = 0; ei < h.edges.size(); ++ei) {
    int m = h.edges[ei].size();
    for (int t = 0; t < m; ++t) {
      const Rational& lambda = hinges[ei].lambda[static_cast<std::size_t>(t)];
      if (lambda == 0) continue;
      BigInt scaled_lambda = scale_to_integer(lambda, scale);
      net.hinges.push_back({ei, t, scaled_lambda * (m - t), scaled_lambda, h.edges[ei].nodes});
      net.total_source_capacity += net.hinges.back().capacity;
    }
  }
  return net;
}

// Plain-text arc dump ("u v cap", one arc per line) for cross-checking the
// network against external min-cut tools.
inline void dump_network(const CutNetwork& net, std::ostream& out) {
  out << "# scale " << net.scale << "\n";
  for (const auto& hg : net.hinges) {
    std::string name = "h_" + std::to_string(hg.edge) + "_" + std::to_string(hg.offset);
    out << "s " << name << " " << hg.capacity << "\n";
    for (NodeId v : hg.members) out << name << " v_" << v << " " << hg.lambda << "\n";
  }
  for (int v = 0; v < net.node_count; ++v) {
    out << "v_" << v << " t " << net.sink_capacity << "\n";
  }
  if (!out) throw DataError("failed writing network dump");
}

namespace detail {

struct SolvedCut {
  __int128 best_value = 0;        // scaled max of f(S) - alpha*|S|
  std::vector<NodeId> max_set;    // maximal source-side node set
};

inline SolvedCut solve_cut(const CutNetwork& net) {
  const char* overflow_hint =
      "cut capacities exceed 128-bit range; reduce reward denominator precision";
  __int128 total = to_int128_checked(net.total_source_capacity, overflow_hint, 125);
  __int128 sink_cap = to_int128_checked(net.sink_capacity, overflow_hint, 120);

  int source = 0;
  int sink = 1;
  int node_base = 2;
  int hinge_base = node_base + net.node_count;
  Dinic dinic(hinge_base + static_cast<int>(net.hinges.size()));
  for (int v = 0; v < net.node_count; ++v) dinic.add_arc(node_base + v, sink, sink_cap);
  for (std::size_t i = 0; i < net.hinges.size(); ++i) {
    const auto& hg = net.hinges[i];
    int hv = hinge_base + static_cast<int>(i);
    dinic.add_arc(source, hv, to_int128_checked(hg.capacity, overflow_hint, 120));
    __int128 lambda = to_int128_checked(hg.lambda, overflow_hint, 120);
    for (NodeId v : hg.members) dinic.add_arc(hv, node_base + v, lambda);
  }

  SolvedCut out;
  __int128 flow = dinic.max_flow(source, sink);
  out.best_value = total - flow;
  std::vector<bool> source_side = dinic.max_source_side(sink);
  for (NodeId v = 0; v < net.node_count; ++v) {
    if (source_side[static_cast<std::size_t>(node_base + v)]) out.max_set.push_back(v);
  }
  return out;
}

}  // namespace detail

// Returns a nonempty S with f(S) - alpha*|S| > 0 (the maximal source side of
// a min cut) when one exists. Exact: all arithmetic is integral after
// scaling.
inline std::optional<std::vector<NodeId>> decision_oracle(const Hypergraph& h,
                                                          std::span<const RationalTable> tables,
                                                          const Rational& alpha) {
  CutNetwork net = build_cut_network(h, tables, alpha);
  detail::SolvedCut cut = detail::solve_cut(net);
  if (cut.best_value > 0) return std::move(cut.max_set);
  return std::nullopt;
}

inline DecisionOracle make_flow_oracle(const Hypergraph& h,
                                       std::span<const RationalTable> tables) {
  std::vector<RationalTable> owned(tables.begin(), tables.end());
  Hypergraph graph = h;
  return [graph = std::move(graph), owned = std::move(owned)](const Rational& alpha) {
    return decision_oracle(graph, owned, alpha);
  };
}

// Global maximizer of Gamma for convex instances: iterates the decision
// oracle at the current density until no improving set exists. Each round
// strictly increases the (rational) density, so termination is guaranteed.
inline ExactResult solve_convex_exact(const Hypergraph& h,
                                      std::span<const RationalTable> tables) {
  return exact_loop_via(make_flow_oracle(h, tables), h, tables);
}

inline ExactResult solve_convex_exact(const Hypergraph& h) {
  std::vector<RationalTable> tables = snap_rewards(h);
  return solve_convex_exact(h, tables);
}

struct ProjectedResult {
  std::vector<NodeId> set;
  double original_density = 0.0;  // Gamma of the set under the input rewards
  Rational hull_density;
  Rational rho;  // certificate: Gamma(set) >= OPT / rho >= OPT / k
};

// Projects every reward onto its lower convex hull, solves the convex
// instance exactly, and reports the winner under the original objective.
inline ProjectedResult solve_projected(const Hypergraph& h) {
  ProjectedHypergraph projected = project_hypergraph(h);
  ExactResult hull_result = solve_convex_exact(projected.graph, projected.exact_rewards);
  ProjectedResult out;
  out.original_density = density(h, hull_result.set);
  out.set = std::move(hull_result.set);
  out.hull_density = std::move(hull_result.density);
  out.rho = projected.rho;
  return out;
}

}  // namespace hyperdense

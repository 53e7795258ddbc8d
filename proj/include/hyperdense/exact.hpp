#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "hyperdense/detail/text.hpp"
#include "hyperdense/errors.hpp"
#include "hyperdense/hypergraph.hpp"
#include "hyperdense/rational.hpp"

namespace hyperdense {

struct BruteForceResult {
  std::vector<NodeId> set;
  double density = 0.0;
};

struct ExactResult {
  std::vector<NodeId> set;
  Rational density;

  double density_double() const { return to_double(density); }
};

// Answers "is there a nonempty S with f(S) - alpha*|S| > 0?" with a witness.
using DecisionOracle =
    std::function<std::optional<std::vector<NodeId>>(const Rational& alpha)>;

namespace detail {

inline constexpr int kHardSubsetLimit = 30;

// Lexicographic order of the ascending id sequences encoded by two bitmasks.
inline bool lex_less_mask(std::uint32_t a, std::uint32_t b) {
  while (a != 0 || b != 0) {
    if (a == 0) return true;  // proper prefix
    if (b == 0) return false;
    int la = std::countr_zero(a);
    int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

inline std::vector<NodeId> mask_to_set(std::uint32_t mask) {
  std::vector<NodeId> s;
  while (mask != 0) {
    s.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

inline void check_subset_limit(const Hypergraph& h, int max_n) {
  if (h.n == 0) throw DataError("cannot solve an empty hypergraph");
  if (h.n > max_n || h.n > kHardSubsetLimit) {
    throw CapacityError("brute force refused: " + std::to_string(h.n) + " nodes exceeds the limit of " +
                        std::to_string(std::min(max_n, kHardSubsetLimit)));
  }
}

// Enumerates all nonempty subsets in Gray-code order, so each step flips one
// node and updates f in O(deg). Visitor sees (mask, popcount, f).
template <typename Value, typename Visitor>
void gray_scan(const Hypergraph& h, std::span<const std::vector<Value>> edge_values,
               Visitor&& visit) {
  auto inc = incidence_lists(h);
  std::vector<int> cnt(h.edges.size(), 0);
  Value f{};
  std::uint32_t mask = 0;
  int count = 0;
  std::uint64_t total = std::uint64_t(1) << h.n;
  for (std::uint64_t step = 1; step < total; ++step) {
    int b = std::countr_zero(step);
    bool added = ((mask >> b) & 1) == 0;
    mask ^= std::uint32_t(1) << b;
    count += added ? 1 : -1;
    for (int ei : inc[static_cast<std::size_t>(b)]) {
      f -= edge_values[static_cast<std::size_t>(ei)][static_cast<std::size_t>(cnt[static_cast<std::size_t>(ei)])];
      cnt[static_cast<std::size_t>(ei)] += added ? 1 : -1;
      f += edge_values[static_cast<std::size_t>(ei)][static_cast<std::size_t>(cnt[static_cast<std::size_t>(ei)])];
    }
    visit(mask, count, f);
  }
}

// Reward tables scaled to a common integer denominator; keeps the subset scan
// in plain integer arithmetic.
struct ScaledRewards {
  std::vector<std::vector<long long>> values;
  BigInt scale;
};

inline ScaledRewards scale_rewards(std::span<const RationalTable> tables) {
  ScaledRewards out;
  out.scale = 1;
  for (const auto& t : tables) out.scale = boost::multiprecision::lcm(out.scale, denominator_lcm(t));
  BigInt total = 0;
  out.values.reserve(tables.size());
  for (const auto& t : tables) {
    std::vector<long long> row;
    row.reserve(t.size());
    for (const Rational& q : t) {
      BigInt v = scale_to_integer(q, out.scale);
      if (v < 0 || v > std::numeric_limits<long long>::max()) {
        throw CapacityError("scaled rewards exceed 64-bit range; reduce reward precision");
      }
      row.push_back(static_cast<long long>(v));
    }
    total += row.back();
    out.values.push_back(std::move(row));
  }
  if (total > (BigInt(1) << 62)) {
    throw CapacityError("total scaled reward exceeds 64-bit range; reduce reward precision");
  }
  return out;
}

// Conversion guard; the bound keeps later products inside 128 bits.
inline __int128 to_int128_checked(const BigInt& v, const char* what,
                                  int max_bits = 126) {
  BigInt bound = BigInt(1) << max_bits;
  if (v > bound || v < -bound) {
    throw CapacityError(std::string(what) + " exceeds the supported integer range");
  }
  return static_cast<__int128>(v);
}

}  // namespace detail

// Exhaustive maximizer of Gamma over all nonempty subsets. Density ties go to
// the lexicographically smallest set.
inline BruteForceResult brute_force(const Hypergraph& h, int max_n = 20) {
  detail::check_subset_limit(h, max_n);
  std::vector<std::vector<double>> edge_values;
  edge_values.reserve(h.edges.size());
  for (const auto& e : h.edges) edge_values.push_back(effective_table(e).values);

  std::uint32_t best_mask = 0;
  double best_f = -1.0;
  int best_count = 1;
  detail::gray_scan<double>(h, edge_values, [&](std::uint32_t mask, int count, double f) {
    double lhs = f * best_count;
    double rhs = best_f * count;
    if (lhs > rhs || (lhs == rhs && detail::lex_less_mask(mask, best_mask))) {
      best_mask = mask;
      best_f = f;
      best_count = count;
    }
  });
  return {detail::mask_to_set(best_mask), best_f / best_count};
}

// Same scan in exact arithmetic over explicit rational tables (weights folded).
inline ExactResult brute_force_exact(const Hypergraph& h, std::span<const RationalTable> tables,
                                     int max_n = 20) {
  detail::check_subset_limit(h, max_n);
  detail::ScaledRewards scaled = detail::scale_rewards(tables);

  std::uint32_t best_mask = 0;
  long long best_f = -1;
  int best_count = 1;
  detail::gray_scan<long long>(
      h, scaled.values, [&](std::uint32_t mask, int count, long long f) {
        __int128 lhs = static_cast<__int128>(f) * best_count;
        __int128 rhs = static_cast<__int128>(best_f) * count;
        if (lhs > rhs || (lhs == rhs && detail::lex_less_mask(mask, best_mask))) {
          best_mask = mask;
          best_f = f;
          best_count = count;
        }
      });
  return {detail::mask_to_set(best_mask), Rational(BigInt(best_f), scaled.scale * best_count)};
}

// Decision oracle backed by exhaustive search: returns the subset maximizing
// f(S) - alpha*|S| when that maximum is positive.
inline DecisionOracle make_brute_force_oracle(const Hypergraph& h,
                                              std::span<const RationalTable> tables,
                                              int max_n = 20) {
  detail::check_subset_limit(h, max_n);
  auto scaled = std::make_shared<detail::ScaledRewards>(detail::scale_rewards(tables));
  Hypergraph graph = h;
  return [graph, scaled, max_n](const Rational& alpha) -> std::optional<std::vector<NodeId>> {
    // value(S) = q*f(S) - p*scale*|S|, positive iff Gamma(S) > alpha.
    __int128 qi = detail::to_int128_checked(BigInt(denominator(alpha)), "alpha denominator", 62);
    __int128 pscale =
        detail::to_int128_checked(BigInt(numerator(alpha)) * scaled->scale, "scaled alpha", 62);

    std::uint32_t best_mask = 0;
    __int128 best_value = 0;
    detail::gray_scan<long long>(
        graph, scaled->values, [&](std::uint32_t mask, int count, long long f) {
          __int128 value = qi * f - pscale * count;
          if (value > best_value ||
              (value == best_value && value > 0 && detail::lex_less_mask(mask, best_mask))) {
            best_mask = mask;
            best_value = value;
          }
        });
    if (best_value > 0) return detail::mask_to_set(best_mask);
    return std::nullopt;
  };
}

// Iterative densification: re-query the oracle at the current density until
// no strictly denser set exists. Exact oracles make the final set a global
// maximizer.
inline ExactResult exact_loop_via(const DecisionOracle& oracle, const Hypergraph& h,
                                  std::span<const RationalTable> tables) {
  if (h.n == 0) throw DataError("cannot solve an empty hypergraph");
  std::vector<NodeId> s(static_cast<std::size_t>(h.n));
  for (NodeId v = 0; v < h.n; ++v) s[static_cast<std::size_t>(v)] = v;
  Rational dens = density_exact(h, tables, s);
  if (dens == 0) throw DataError("instance has zero total reward");
  while (auto next = oracle(dens)) {
    Rational improved = density_exact(h, tables, *next);
    if (improved <= dens) throw DataError("decision oracle returned a non-improving set");
    s = std::move(*next);
    dens = improved;
  }
  return {std::move(s), std::move(dens)};
}

struct IlpInfo {
  std::size_t node_vars = 0;
  std::size_t edge_vars = 0;
  std::size_t constraints = 0;
};

// Emits the decision ILP for "exists S with f(S) - alpha*|S| > 0" in CPLEX LP
// text format. Variables: x_<node> picks nodes, y_<edge>_<i> pays the i-th
// reward increment; constraints clear the fraction of y <= (1/i) * sum x.
// Increments with zero coefficient are dropped entirely, which shrinks files
// materially for threshold rewards. Output ordering is deterministic.
inline IlpInfo write_ilp(const Hypergraph& h, double alpha, std::ostream& out) {
  if (h.n == 0) throw DataError("cannot export an empty hypergraph");
  IlpInfo info;
  info.node_vars = static_cast<std::size_t>(h.n);

  struct Term {
    std::size_t edge;
    int i;
    double coef;
  };
  std::vector<Term> terms;
  for (std::size_t ei = 0; ei < h.edges.size(); ++ei) {
    RewardTable t = effective_table(h.edges[ei]);
    for (int i = 1; i <= t.size(); ++i) {
      double coef = t(i) - t(i - 1);
      if (coef != 0.0) terms.push_back({ei, i, coef});
    }
  }
  info.edge_vars = terms.size();
  info.constraints = terms.size();

  out << "\\ densest-subhypergraph decision ILP, alpha=" << detail::format_double(alpha) << "\n";
  out << "Maximize\n obj:";
  std::size_t line_len = 5;
  auto emit_term = [&](const std::string& text) {
    if (line_len + text.size() > 200) {
      out << "\n  ";
      line_len = 2;
    }
    out << text;
    line_len += text.size();
  };
  bool first = true;
  for (const Term& t : terms) {
    std::string s = first ? " " : " + ";
    s += detail::format_double(t.coef) + " y_" + std::to_string(t.edge) + "_" + std::to_string(t.i);
    emit_term(s);
    first = false;
  }
  if (alpha != 0.0) {
    for (NodeId v = 0; v < h.n; ++v) {
      emit_term(" - " + detail::format_double(alpha) + " x_" + std::to_string(v));
      first = false;
    }
  }
  if (first) emit_term(" 0 x_0");
  out << "\nSubject To\n";
  for (const Term& t : terms) {
    out << " c_" << t.edge << "_" << t.i << ": ";
    if (t.i != 1) out << t.i << " ";
    out << "y_" << t.edge << "_" << t.i;
    for (NodeId v : h.edges[t.edge].nodes) out << " - x_" << v;
    out << " <= 0\n";
  }
  out << "Binary\n";
  for (NodeId v = 0; v < h.n; ++v) out << " x_" << v << "\n";
  for (const Term& t : terms) out << " y_" << t.edge << "_" << t.i << "\n";
  out << "End\n";
  if (!out) throw DataError("failed writing LP output");
  return info;
}

}  // namespace hyperdense

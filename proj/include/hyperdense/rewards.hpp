#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdense/errors.hpp"
#include "hyperdense/rational.hpp"

namespace hyperdense {

// Tabulated per-edge reward r(0..m) for an edge of size m. Monotone,
// nonnegative, r(0) = 0.
struct RewardTable {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()) - 1; }  // edge size m
  double operator()(int i) const { return values[static_cast<std::size_t>(i)]; }
  bool attached() const { return !values.empty(); }

  bool operator==(const RewardTable&) const = default;
};

enum class RewardFamily {
  AtLeastTwo,
  AtLeastHalf,
  AllButOne,
  Standard,
  Quadratic,
  SquareRoot,
};

inline constexpr std::string_view kRewardFamilyNames[] = {
    "atleast-two", "atleast-half", "all-but-one", "standard", "quadratic", "square-root",
};

inline std::string_view reward_family_name(RewardFamily f) {
  return kRewardFamilyNames[static_cast<int>(f)];
}

inline std::optional<RewardFamily> parse_reward_family(std::string_view name) {
  for (int i = 0; i < 6; ++i) {
    if (name == kRewardFamilyNames[i]) return static_cast<RewardFamily>(i);
  }
  return std::nullopt;
}

// Built-in reward families. The threshold families and square-root carry a
// forced r(1) = 0 so that single-node inclusions earn nothing.
inline RewardTable builtin_reward(RewardFamily family, int m) {
  if (m < 1) throw DataError("edge size must be at least 1");
  RewardTable t;
  t.values.assign(static_cast<std::size_t>(m) + 1, 0.0);
  for (int i = 1; i <= m; ++i) {
    double v = 0.0;
    switch (family) {
      case RewardFamily::AtLeastTwo: v = i >= 2 ? 1.0 : 0.0; break;
      case RewardFamily::AtLeastHalf: v = i >= (m + 1) / 2 ? 1.0 : 0.0; break;
      case RewardFamily::AllButOne: v = i >= m - 1 ? 1.0 : 0.0; break;
      case RewardFamily::Standard: v = i == m ? 1.0 : 0.0; break;
      case RewardFamily::Quadratic: v = static_cast<double>(i) * i / m; break;
      case RewardFamily::SquareRoot: v = std::sqrt(static_cast<double>(i)); break;
    }
    t.values[static_cast<std::size_t>(i)] = v;
  }
  switch (family) {
    case RewardFamily::AtLeastTwo:
    case RewardFamily::AtLeastHalf:
    case RewardFamily::AllButOne:
    case RewardFamily::SquareRoot:
      t.values[1] = 0.0;
      break;
    default:
      break;
  }
  return t;
}

// nullopt when valid, otherwise a description of the first violation.
inline std::optional<std::string> validate(const RewardTable& t) {
  if (t.values.empty()) return "table is empty";
  if (t.values[0] != 0.0) return "r(0) must be 0";
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (!(t.values[i] >= 0.0)) return "r(" + std::to_string(i) + ") is negative or NaN";
    if (i > 0 && t.values[i] < t.values[i - 1]) {
      return "monotonicity violation at i=" + std::to_string(i);
    }
  }
  return std::nullopt;
}

// Tolerance for floating convexity checks; rational tables are checked exactly.
inline constexpr double kConvexityTolerance = 1e-12;

inline bool is_convex(const RewardTable& t) {
  for (int i = 1; i <= t.size() - 1; ++i) {
    if (t(i + 1) - t(i) < t(i) - t(i - 1) - kConvexityTolerance) return false;
  }
  return true;
}

inline bool is_convex_exact(const RationalTable& t) {
  int m = static_cast<int>(t.size()) - 1;
  for (int i = 1; i <= m - 1; ++i) {
    if (t[static_cast<std::size_t>(i) + 1] - t[static_cast<std::size_t>(i)] <
        t[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(i) - 1]) {
      return false;
    }
  }
  return true;
}

// delta(i) = r(i) - r(i-1), i = 1..m.
inline std::vector<double> deltas(const RewardTable& t) {
  std::vector<double> d;
  d.reserve(t.values.size() - 1);
  for (std::size_t i = 1; i < t.values.size(); ++i) d.push_back(t.values[i] - t.values[i - 1]);
  return d;
}

inline RewardTable fold_weight(double w, const RewardTable& t) {
  if (!(w >= 0.0)) throw DataError("edge weight must be nonnegative");
  RewardTable out = t;
  for (double& v : out.values) v *= w;
  return out;
}

// Reward seen by a surviving edge after j of its nodes were absorbed:
// r'(i) = r(i + j) - r(j).
inline RewardTable contract_reward(const RewardTable& t, int j) {
  int m = t.size();
  if (j < 0 || j > m) throw DataError("contraction count out of range");
  RewardTable out;
  out.values.reserve(static_cast<std::size_t>(m - j) + 1);
  for (int i = 0; i + j <= m; ++i) out.values.push_back(t(i + j) - t(j));
  return out;
}

// True when every table satisfies r(1) >= r(i)/i, in which case a best
// single node is already optimal and solvers may short-circuit.
inline bool is_trivial_corner(std::span<const RewardTable> tables) {
  for (const RewardTable& t : tables) {
    double r1 = t.values.size() > 1 ? t.values[1] : 0.0;
    for (int i = 1; i <= t.size(); ++i) {
      if (static_cast<double>(i) * r1 + 1e-12 < t(i)) return false;
    }
  }
  return true;
}

inline RationalTable snap_table(const RewardTable& t,
                                std::int64_t denominator = kSnapDenominator) {
  RationalTable out;
  out.reserve(t.values.size());
  for (double v : t.values) out.push_back(snap_to_rational(v, denominator));
  return out;
}

inline RewardTable to_double_table(const RationalTable& t) {
  RewardTable out;
  out.values.reserve(t.size());
  for (const Rational& q : t) out.values.push_back(to_double(q));
  return out;
}

// Custom per-size reward tables loaded from text, one line per edge size:
// "m: v0,v1,...,vm". '#' starts a comment line.
struct CustomRewards {
  std::map<int, RewardTable> by_size;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view s, std::size_t line, const char* what) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

inline CustomRewards load_custom_rewards(std::istream& in) {
  CustomRewards out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    auto colon = s.find(':');
    if (colon == std::string_view::npos) throw ParseError(lineno, "expected 'm: v0,v1,...,vm'");
    std::string_view head = detail::trim(s.substr(0, colon));
    int m = 0;
    auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), m);
    if (ec != std::errc() || ptr != head.data() + head.size() || m < 1) {
      throw ParseError(lineno, "malformed edge size '" + std::string(head) + "'");
    }
    RewardTable t;
    std::string_view rest = s.substr(colon + 1);
    while (true) {
      auto comma = rest.find(',');
      std::string_view field = comma == std::string_view::npos ? rest : rest.substr(0, comma);
      t.values.push_back(detail::parse_double(field, lineno, "reward value"));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (t.size() != m) {
      throw ParseError(lineno, "expected " + std::to_string(m + 1) + " values for size " +
                                   std::to_string(m) + ", got " +
                                   std::to_string(t.values.size()));
    }
    if (auto violation = validate(t)) throw ParseError(lineno, *violation);
    if (!out.by_size.emplace(m, std::move(t)).second) {
      throw ParseError(lineno, "duplicate table for edge size " + std::to_string(m));
    }
  }
  if (out.by_size.empty()) throw DataError("custom reward file contains no tables");
  return out;
}

}  // namespace hyperdense

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "hyperdense/errors.hpp"

namespace hyperdense {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact reward values r(0..m) for one edge.
using RationalTable = std::vector<Rational>;

// Denominator used when forcing floating rewards into rationals. Values are
// rounded to the nearest multiple of 1/kSnapDenominator; anything already
// expressible with a denominator dividing it (integers, dyadics up to 2^6,
// tenths, ...) survives unchanged.
inline constexpr std::int64_t kSnapDenominator = 1'000'000;

inline Rational snap_to_rational(double x, std::int64_t denominator = kSnapDenominator) {
  if (!std::isfinite(x)) throw DataError("cannot represent non-finite value as a rational");
  double scaled = x * static_cast<double>(denominator);
  if (std::abs(scaled) >= 9.0e18) {
    throw CapacityError("value too large to convert to a rational at this precision");
  }
  return Rational(BigInt(std::llround(scaled)), BigInt(denominator));
}

inline double to_double(const Rational& q) { return static_cast<double>(q); }

// Least common multiple of the denominators of a range of rationals.
template <typename Range>
BigInt denominator_lcm(const Range& values) {
  BigInt l = 1;
  for (const Rational& q : values) l = boost::multiprecision::lcm(l, BigInt(denominator(q)));
  return l;
}

// q * scale, which must be an exact integer (scale a multiple of q's denominator).
inline BigInt scale_to_integer(const Rational& q, const BigInt& scale) {
  BigInt num = numerator(q) * scale;
  BigInt den = denominator(q);
  if (num % den != 0) throw DataError("scale does not clear the denominator");
  return num / den;
}

}  // namespace hyperdense

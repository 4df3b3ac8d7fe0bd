#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace guesscost {

/// Arbitrary-precision natural number used for every cardinality.
using Natural = boost::multiprecision::cpp_int;
/// Exact rational used for costs and probabilities.
using Rational = boost::multiprecision::cpp_rational;

inline Natural pow_natural(const Natural& base, std::uint64_t exp) {
  Natural result = 1;
  Natural b = base;
  while (exp) {
    if (exp & 1u) result *= b;
    exp >>= 1u;
    if (exp) b *= b;
  }
  return result;
}

inline Natural numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Natural denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// log2 of a positive natural, accurate to double precision for any size.
inline double log2_natural(const Natural& n) {
  if (n <= 0) return -INFINITY;
  const unsigned msb = boost::multiprecision::msb(n);
  if (msb < 63) return std::log2(static_cast<double>(static_cast<std::uint64_t>(n)));
  const unsigned shift = msb - 62;
  const auto top = static_cast<std::uint64_t>(n >> shift);
  return std::log2(static_cast<double>(top)) + static_cast<double>(shift);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "n" for integers, "n/d" otherwise.
inline std::string to_fraction_string(const Rational& r) {
  const Natural num = numerator_of(r);
  const Natural den = denominator_of(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Fixed-point decimal rendering with `places` digits, rounded half away from zero.
inline std::string to_decimal_string(const Rational& r, unsigned places = 4) {
  const bool negative = r < 0;
  const Rational a = negative ? Rational(-r) : r;
  const Natural scale = pow_natural(10, places);
  const Natural num = numerator_of(a) * scale;
  const Natural den = denominator_of(a);
  Natural q = num / den;
  const Natural rem = num % den;
  if (rem * 2 >= den) q += 1;
  std::string digits = q.str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = negative && q != 0 ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places) out += "." + digits.substr(digits.size() - places);
  return out;
}

}  // namespace guesscost

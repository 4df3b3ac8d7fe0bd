#pragma once

#include "guesscost/error.hpp"
#include "guesscost/numeric.hpp"

#include <compare>
#include <string>

namespace guesscost {

/// Expected number of guesses, held exactly. Every cost this library
/// produces is a half-integer.
class CostValue {
 public:
  CostValue() = default;
  explicit CostValue(Rational value) : value_(std::move(value)) {}

  const Rational& value() const noexcept { return value_; }
  bool is_half_integer() const { return denominator_of(value_) <= 2; }

  std::string fraction() const { return to_fraction_string(value_); }
  std::string decimal(unsigned places = 4) const { return to_decimal_string(value_, places); }
  double to_double() const { return guesscost::to_double(value_); }

  friend bool operator==(const CostValue&, const CostValue&) = default;
  friend std::strong_ordering operator<=>(const CostValue& a, const CostValue& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_{0};
};

/// Brute-force cost of a uniformly shuffled dictionary of `n` words: (1+n)/2.
inline CostValue bf_cost(const Natural& n) {
  if (n < 1) throw Error(ErrorKind::Domain, "an empty dictionary cannot contain the password");
  return CostValue(Rational(Natural(1) + n, Natural(2)));
}

/// log2(2*cost - 1): a full space of N words at brute-force cost reports log2(N).
inline double to_bits(const CostValue& cost) {
  if (cost.value() < 1) throw Error(ErrorKind::Domain, "cost below one guess has no bits figure");
  const Rational doubled = cost.value() * 2 - 1;
  if (denominator_of(doubled) == 1) return log2_natural(numerator_of(doubled));
  return log2_natural(numerator_of(doubled)) - log2_natural(denominator_of(doubled));
}

}  // namespace guesscost

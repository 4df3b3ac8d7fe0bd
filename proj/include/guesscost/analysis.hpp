#pragma once

#include "guesscost/cost.hpp"
#include "guesscost/error.hpp"
#include "guesscost/numeric.hpp"
#include "guesscost/strategy.hpp"

#include <string>

namespace guesscost {

enum class Preferred { ShortFirst, LongFirst, Tie };

inline const char* to_string(Preferred p) {
  switch (p) {
    case Preferred::ShortFirst: return "short-first";
    case Preferred::LongFirst: return "long-first";
    case Preferred::Tie: return "tie";
  }
  return "?";
}

/// Costs of searching a two-part dictionary D = D_s ∪ D_l short part first
/// versus long part first, given the probability that the password is in D_s.
struct TwoStratumComparison {
  CostValue cost_short_first;
  CostValue cost_long_first;
  Preferred better;
  Rational threshold_short_prob;
};

namespace detail {

inline void require_sizes(const Natural& size_s, const Natural& size_l) {
  if (size_s < 1 || size_l < 1) throw Error(ErrorKind::Domain, "stratum sizes must be at least 1");
}

}  // namespace detail

/// p_short at which both orders cost the same: |D_s| / |D|.
inline Rational threshold_short_prob(const Natural& size_s, const Natural& size_l) {
  detail::require_sizes(size_s, size_l);
  return Rational(size_s, size_s + size_l);
}

/// Threshold for "add one more symbol": strata of all words of length m and m+1.
inline Rational add_letter_threshold(const Natural& alphabet_size) {
  if (alphabet_size < 1) throw Error(ErrorKind::Domain, "alphabet size must be at least 1");
  return Rational(Natural(1), Natural(1) + alphabet_size);
}

inline TwoStratumComparison compare_short_long(const Natural& size_s, const Natural& size_l, const Rational& p_short) {
  detail::require_sizes(size_s, size_l);
  if (p_short < 0 || p_short > 1) throw Error(ErrorKind::Domain, "p_short must lie in [0, 1]");
  const Rational bf_s = bf_cost(size_s).value();
  const Rational bf_l = bf_cost(size_l).value();
  const Rational p_long = 1 - p_short;
  CostValue short_first(p_short * bf_s + p_long * (Rational(size_s) + bf_l));
  CostValue long_first(p_long * bf_l + p_short * (Rational(size_l) + bf_s));
  const Preferred better = short_first < long_first   ? Preferred::ShortFirst
                           : long_first < short_first ? Preferred::LongFirst
                                                      : Preferred::Tie;
  return {std::move(short_first), std::move(long_first), better, threshold_short_prob(size_s, size_l)};
}

struct MistakeBound {
  Natural difference;   // Cost(AS_s) - Cost(AS_l) when the password is surely in D_l
  Rational exact_ratio;  // Cost(AS_s) / Cost(AS_l) in that case
};

inline MistakeBound mistake_bound(const Natural& size_s, const Natural& size_l) {
  const auto cmp = compare_short_long(size_s, size_l, Rational(0));
  const Rational diff = cmp.cost_short_first.value() - cmp.cost_long_first.value();
  return {numerator_of(diff), cmp.cost_short_first.value() / cmp.cost_long_first.value()};
}

enum class Winner { A, B, Tie };

inline const char* to_string(Winner w) {
  switch (w) {
    case Winner::A: return "A";
    case Winner::B: return "B";
    case Winner::Tie: return "tie";
  }
  return "?";
}

struct StrategyComparison {
  CostValue cost_a;
  CostValue cost_b;
  Winner better;
};

/// Same effective stratification: identical layers with identical effective sizes.
inline bool same_stratification(const Strategy& a, const Strategy& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a.layers()[i].spec == b.layers()[i].spec) ||
        a.layers()[i].effective_size != b.layers()[i].effective_size) {
      return false;
    }
  }
  return true;
}

inline StrategyComparison compare_strategies(const Strategy& a, const Strategy& b, const Distribution& dist) {
  if (dist.uses_layer_index() && !same_stratification(a, b)) {
    throw Error(ErrorKind::LayerIndexAmbiguous,
                "layer targets only make sense for one stratification; use password targets to compare "
                "structurally different strategies");
  }
  CostValue ca = expected_cost(a, dist);
  CostValue cb = expected_cost(b, dist);
  const Winner better = ca < cb ? Winner::A : cb < ca ? Winner::B : Winner::Tie;
  return {std::move(ca), std::move(cb), better};
}

}  // namespace guesscost

#include "guesscost/strategy.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace guesscost {
namespace {

using testing::digits;
using testing::Gen;
using testing::w;
using testing::words;

Rational q(long n, long d = 1) { return Rational(n, d); }

Strategy digits_then_words() {
  return Strategy({LayerSpec::exhaustive(digits(), 4, 4),
                   LayerSpec::wordlist(make_source("p", words({"password", "dragon"})))});
}

/// Strategy whose effective layers are disjoint word lists of the given sizes.
Strategy sized(std::initializer_list<int> sizes) {
  std::vector<LayerSpec> layers;
  int next = 0;
  for (int n : sizes) {
    std::vector<Word> ws;
    for (int i = 0; i < n; ++i) ws.push_back(ascii_word("w" + std::to_string(next++)));
    layers.push_back(LayerSpec::wordlist(make_source("l" + std::to_string(layers.size()), ws)));
  }
  return Strategy(std::move(layers));
}

TEST(BfCost, Values) {
  EXPECT_EQ(bf_cost(1).value(), q(1));
  EXPECT_EQ(bf_cost(999).value(), q(500));
  EXPECT_EQ(bf_cost(101).value(), q(51));
  EXPECT_EQ(bf_cost(10).value(), q(11, 2));
}

TEST(BfCost, RejectsEmptyDictionary) {
  try {
    (void)bf_cost(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

// Oracle: the literal sum over positions, E = sum_i i * P_i with P_i = 1/n.
TEST(BfCost, MatchesPositionAverage) {
  for (long n = 1; n <= 200; ++n) {
    Rational sum = 0;
    for (long i = 1; i <= n; ++i) sum += Rational(i, n);
    EXPECT_EQ(bf_cost(n).value(), sum);
  }
}

TEST(Locate, Examples) {
  const Strategy s = digits_then_words();
  EXPECT_EQ(locate(s, w("7077")), 1u);
  EXPECT_EQ(locate(s, w("dragon")), 2u);
  try {
    (void)locate(s, w("zz"));
    FAIL();
  } catch (const NotCoveredError& e) {
    EXPECT_EQ(e.total(), 10002);
  }
}

TEST(Strength, Examples) {
  const auto single = Strategy({LayerSpec::exhaustive(Alphabet("nine", U"abcdefghi"), 1, 3)});
  ASSERT_EQ(single.total(), 9 + 81 + 729);

  const Strategy three = Strategy({LayerSpec::exhaustive(Alphabet("a", U"abc"), 1, 1),
                                   LayerSpec::exhaustive(digits(), 2, 2), LayerSpec::exhaustive(digits(), 3, 3)});
  const auto r = strength(three, w("55"));
  EXPECT_EQ(r.layer_index, 2u);
  EXPECT_EQ(r.preceding, 3);
  EXPECT_EQ(r.layer_size, 100);
  EXPECT_EQ(r.strength.value(), q(3) + q(101, 2));

  EXPECT_EQ(strength(sized({10, 100}), w("w50")).strength.value(), q(121, 2));  // 10 + 50.5
  const auto dragon = strength(digits_then_words(), w("dragon"));
  EXPECT_EQ(dragon.strength.value(), q(20003, 2));  // 10000 + 1.5
}

TEST(Strength, SingleLayerOf999) {
  std::vector<Word> ws;
  for (int i = 0; i < 999; ++i) ws.push_back(ascii_word(std::to_string(i)));
  const Strategy s({LayerSpec::wordlist(make_source("s", ws))});
  EXPECT_EQ(strength(s, w("0")).strength.value(), q(500));
  EXPECT_EQ(strength(s, w("998")).strength.value(), q(500));
}

TEST(Strength, NotCoveredPropagates) {
  EXPECT_THROW((void)strength(digits_then_words(), w("nope")), NotCoveredError);
}

TEST(ExpectedCost, Examples) {
  const Strategy s = sized({10, 90});
  EXPECT_EQ(expected_cost(s, Distribution({{LayerIndex{1}, 1}})).value(), q(11, 2));
  EXPECT_EQ(expected_cost(s, Distribution({{LayerIndex{1}, q(1, 2)}, {LayerIndex{2}, q(1, 2)}})).value(), q(61, 2));
}

TEST(ExpectedCost, SwappedLayersTieAtSizeRatio) {
  const Strategy short_first = sized({10, 90});
  // Same universe, long stratum first: rebuild with the 90 words leading.
  std::vector<Word> shorts;
  std::vector<Word> longs;
  for (int i = 0; i < 10; ++i) shorts.push_back(ascii_word("w" + std::to_string(i)));
  for (int i = 10; i < 100; ++i) longs.push_back(ascii_word("w" + std::to_string(i)));
  const Strategy long_first({LayerSpec::wordlist(make_source("l", longs)), LayerSpec::wordlist(make_source("s", shorts))});
  const CostValue a = expected_cost(short_first, Distribution({{LayerIndex{1}, q(1, 10)}, {LayerIndex{2}, q(9, 10)}}));
  const CostValue b = expected_cost(long_first, Distribution({{LayerIndex{2}, q(1, 10)}, {LayerIndex{1}, q(9, 10)}}));
  EXPECT_EQ(a, b);
}

TEST(ExpectedCost, Errors) {
  const Strategy s = sized({3});
  EXPECT_THROW(Distribution({}), Error);
  EXPECT_THROW(Distribution({{LayerIndex{1}, 0}}), Error);
  EXPECT_THROW((void)expected_cost(s, Distribution({{LayerIndex{2}, 1}})), Error);
  EXPECT_THROW((void)expected_cost(s, Distribution({{w("zzz"), 1}})), NotCoveredError);
}

TEST(Distribution, NormalizesWeights) {
  const Distribution d({{LayerIndex{1}, 1}, {LayerIndex{2}, 3}});
  EXPECT_EQ(d.entries()[0].weight, q(1, 4));
  EXPECT_EQ(d.entries()[1].weight, q(3, 4));
}

TEST(MergeDictionaries, Examples) {
  auto m = merge_dictionaries(words({"a", "b"}), words({"b", "c"}));
  EXPECT_EQ(m.first, words({"a", "b", "c"}));
  EXPECT_EQ(m.second, words({"b", "c", "a"}));
  m = merge_dictionaries(words({"x", "y"}), words({"x", "y"}));
  EXPECT_EQ(m.first, words({"x", "y"}));
  EXPECT_EQ(m.second, words({"x", "y"}));
  m = merge_dictionaries(words({"a"}), words({"b"}));
  EXPECT_EQ(m.first, words({"a", "b"}));
  EXPECT_EQ(m.second, words({"b", "a"}));
  EXPECT_THROW(merge_dictionaries(words({"a", "a"}), words({"b"})), Error);
}

TEST(ToBits, Examples) {
  EXPECT_DOUBLE_EQ(to_bits(CostValue(q(1))), 0.0);
  EXPECT_DOUBLE_EQ(to_bits(CostValue(q(1025, 2))), 10.0);
  EXPECT_NEAR(to_bits(CostValue(q(500))), 9.964, 1e-3);
  EXPECT_DOUBLE_EQ(to_bits(CostValue(q(500))), std::log2(999.0));
  EXPECT_THROW((void)to_bits(CostValue(q(1, 2))), Error);
}

TEST(ToBits, HugeCosts) {
  const Natural n = pow_natural(95, 40);
  EXPECT_NEAR(to_bits(bf_cost(n)), 40 * std::log2(95.0), 1e-9);
}

// Random strategies of disjoint word-list layers with random sizes.
Strategy random_strategy(Gen& gen, std::vector<std::vector<Word>>& layer_words) {
  layer_words.clear();
  std::vector<LayerSpec> layers;
  int next = 0;
  const std::size_t n = gen.between(1, 5);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Word> ws;
    const std::size_t size = gen.between(1, 30);
    for (std::size_t i = 0; i < size; ++i) ws.push_back(ascii_word("p" + std::to_string(next++)));
    layers.push_back(LayerSpec::wordlist(make_source("l" + std::to_string(j), ws)));
    layer_words.push_back(std::move(ws));
  }
  return Strategy(std::move(layers));
}

TEST(CoreProperties, HalfIntegerClosureAndStratumBounds) {
  Gen gen(1);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::vector<Word>> lw;
    const Strategy s = random_strategy(gen, lw);
    for (std::size_t k = 1; k <= s.size(); ++k) {
      const Word& pw = lw[k - 1][gen.below(lw[k - 1].size())];
      const StrengthReport r = strength(s, pw);
      EXPECT_TRUE(r.strength.is_half_integer());
      EXPECT_TRUE(bf_cost(s.layer_size(k)).is_half_integer());
      EXPECT_GT(r.strength.value(), Rational(s.cumulative(k - 1)));
      EXPECT_LE(r.strength.value(), Rational(s.cumulative(k)));
    }
  }
}

TEST(CoreProperties, DegenerationToBruteForce) {
  Gen gen(2);
  for (int t = 0; t < 100; ++t) {
    auto ws = gen.word_list(40, U"abcdef", 4);
    if (ws.empty()) continue;
    const Strategy s({LayerSpec::wordlist(make_source("s", ws))});
    for (const Word& x : ws) EXPECT_EQ(strength(s, x).strength, bf_cost(ws.size()));
  }
}

TEST(CoreProperties, OrderWithinLayerIsIrrelevant) {
  Gen gen(3);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::vector<Word>> lw;
    const Strategy s = random_strategy(gen, lw);
    std::vector<LayerSpec> shuffled;
    for (auto ws : lw) {
      fisher_yates(std::span<Word>(ws), gen.rng());
      shuffled.push_back(LayerSpec::wordlist(make_source("x", ws)));
    }
    const Strategy s2(std::move(shuffled));
    for (const auto& ws : lw) {
      for (const Word& x : ws) EXPECT_EQ(strength(s, x).strength, strength(s2, x).strength);
    }
  }
}

TEST(CoreProperties, AppendingLayersKeepsEarlierStrengths) {
  Gen gen(4);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::vector<Word>> lw;
    const Strategy s = random_strategy(gen, lw);
    std::vector<LayerSpec> extended = s.declared();
    extended.push_back(LayerSpec::wordlist(make_source("tail", gen.word_list(20, U"xyz", 5))));
    extended.push_back(LayerSpec::exhaustive(Alphabet("q", U"qQ"), 1, 4));
    const Strategy s2(std::move(extended));
    for (const auto& ws : lw) {
      for (const Word& x : ws) EXPECT_EQ(strength(s, x).strength, strength(s2, x).strength);
    }
  }
}

TEST(CoreProperties, ExpectedCostIsLinearInMixtures) {
  Gen gen(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::vector<Word>> lw;
    const Strategy s = random_strategy(gen, lw);
    auto random_dist = [&] {
      std::vector<Distribution::Entry> e;
      const std::size_t n = gen.between(1, 4);
      for (std::size_t i = 0; i < n; ++i) {
        const Rational weight(static_cast<long>(gen.between(1, 9)), static_cast<long>(gen.between(1, 9)));
        if (gen.coin()) {
          e.push_back({LayerIndex{gen.between(1, s.size())}, weight});
        } else {
          const auto& ws = lw[gen.below(lw.size())];
          e.push_back({ws[gen.below(ws.size())], weight});
        }
      }
      return e;
    };
    const auto e1 = random_dist();
    const auto e2 = random_dist();
    const Rational alpha(static_cast<long>(gen.between(1, 9)), 10);
    std::vector<Distribution::Entry> mix;
    const Distribution d1(e1);
    const Distribution d2(e2);
    for (const auto& e : d1.entries()) mix.push_back({e.target, alpha * e.weight});
    for (const auto& e : d2.entries()) mix.push_back({e.target, (1 - alpha) * e.weight});
    EXPECT_EQ(expected_cost(s, Distribution(mix)).value(),
              alpha * expected_cost(s, d1).value() + (1 - alpha) * expected_cost(s, d2).value());
  }
}

TEST(CoreProperties, MergePreservesPrefixesAndEqualizesSets) {
  Gen gen(6);
  for (int t = 0; t < 300; ++t) {
    const auto d1 = gen.word_list(12, U"abc", 2);
    const auto d2 = gen.word_list(12, U"abc", 2);
    const auto m = merge_dictionaries(d1, d2);
    EXPECT_TRUE(std::equal(d1.begin(), d1.end(), m.first.begin()));
    EXPECT_TRUE(std::equal(d2.begin(), d2.end(), m.second.begin()));
    EXPECT_TRUE(std::is_permutation(m.first.begin(), m.first.end(), m.second.begin(), m.second.end()));
  }
}

}  // namespace
}  // namespace guesscost

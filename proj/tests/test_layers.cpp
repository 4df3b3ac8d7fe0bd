#include "guesscost/layer.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

namespace guesscost {
namespace {

using testing::digits;
using testing::Gen;
using testing::lower;
using testing::w;
using testing::words;

std::vector<Word> first_n(const LayerSpec& layer, std::size_t n) {
  std::vector<Word> out;
  for_each_word(layer, [&](const Word& x) {
    out.push_back(x);
    return out.size() < n;
  });
  return out;
}

TEST(Cardinality, Exhaustive) {
  EXPECT_EQ(cardinality(LayerSpec::exhaustive(digits(), 4, 4)), 10000);
  EXPECT_EQ(cardinality(LayerSpec::exhaustive(lower(), 1, 2)), 702);
}

TEST(Cardinality, ExhaustiveRejectsBadLengths) {
  EXPECT_THROW(LayerSpec::exhaustive(digits(), 0, 2), Error);
  EXPECT_THROW(LayerSpec::exhaustive(digits(), 3, 2), Error);
}

TEST(Cardinality, CombinedCountsOrderedTuples) {
  auto src = make_source("ab", words({"a", "b", "c"}));
  EXPECT_EQ(cardinality(LayerSpec::combined(src, 2)), 9);
  EXPECT_EQ(cardinality(LayerSpec::combined(src, 3, w("-"))), 27);
}

TEST(Cardinality, AmbiguousCombinationCountsDistinctWords) {
  // "a"+"aa" == "aa"+"a": tuples overcount, the word set has fewer members.
  auto src = make_source("amb", words({"a", "aa"}));
  const auto layer = LayerSpec::combined(src, 2);
  EXPECT_FALSE(layer.size_is_exact());
  EXPECT_EQ(cardinality(layer), 3);  // aa, aaa, aaaa
  EXPECT_EQ(first_n(layer, 10), words({"aa", "aaa", "aaaa"}));
  EXPECT_THROW(cardinality(layer, 2), Error);
}

TEST(Contains, Exhaustive) {
  const auto layer = LayerSpec::exhaustive(digits(), 4, 4);
  EXPECT_TRUE(contains(layer, w("7077")));
  EXPECT_FALSE(contains(layer, w("707a")));
  EXPECT_FALSE(contains(layer, w("707")));
}

TEST(Contains, CombinedParsesTuples) {
  const auto layer = LayerSpec::combined(make_source("s", words({"red", "dog"})), 2);
  EXPECT_TRUE(contains(layer, w("reddog")));
  EXPECT_TRUE(contains(layer, w("dogdog")));
  EXPECT_FALSE(contains(layer, w("red")));
  EXPECT_FALSE(contains(layer, w("reddogdog")));
}

TEST(Contains, CombinedWithSeparatorInsideWords) {
  const auto layer = LayerSpec::combined(make_source("s", words({"a-b", "c"})), 2, w("-"));
  EXPECT_TRUE(contains(layer, w("a-b-c")));
  EXPECT_TRUE(contains(layer, w("c-a-b")));
  EXPECT_FALSE(contains(layer, w("a-c")));
}

TEST(Contains, MangledInvertsEachRule) {
  const auto layer = LayerSpec::mangled(make_source("s", words({"player", "sol"})),
                                        {MangleRule::firstcap(), MangleRule::leet(), MangleRule::suffix_digits(2)});
  EXPECT_TRUE(contains(layer, w("player")));
  EXPECT_TRUE(contains(layer, w("Player")));
  EXPECT_TRUE(contains(layer, w("p1@y3r")));
  EXPECT_TRUE(contains(layer, w("$01")));
  EXPECT_TRUE(contains(layer, w("player07")));
  EXPECT_FALSE(contains(layer, w("player7")));
  EXPECT_FALSE(contains(layer, w("PLAYER")));
  EXPECT_FALSE(contains(layer, w("P1@y3r")));
}

TEST(Contains, MangledFallbackRespectsCap) {
  // 17 ambiguous '1' symbols exceed the preimage budget, forcing enumeration.
  const Word many_ones(17, U'1');
  const auto layer = LayerSpec::mangled(make_source("s", {many_ones, w("x")}), {MangleRule::leet()});
  EXPECT_TRUE(contains(layer, many_ones));
  EXPECT_THROW(contains(layer, Word(18, U'1'), 1), Error);
}

TEST(Cardinality, MangledCountsRepeatsAcrossBlocksOnce) {
  // "a" with firstcap yields "A", which is also a base word of its own.
  const auto layer = LayerSpec::mangled(make_source("s", words({"a", "A", "s"})), {MangleRule::firstcap()});
  EXPECT_EQ(cardinality(layer), 4);
  EXPECT_EQ(first_n(layer, 10), words({"a", "A", "s", "S"}));
}

TEST(Enumerate, CanonicalOrders) {
  EXPECT_EQ(first_n(LayerSpec::exhaustive(digits(), 1, 2), 3), words({"0", "1", "2"}));
  EXPECT_EQ(first_n(LayerSpec::exhaustive(digits(), 1, 2), 12)[10], w("00"));
  EXPECT_EQ(first_n(LayerSpec::mangled(make_source("s", words({"ox"})), {MangleRule::allcase()}), 10),
            words({"ox", "Ox", "oX", "OX"}));
  EXPECT_EQ(first_n(LayerSpec::combined(make_source("s", words({"a", "b"})), 2), 10),
            words({"aa", "ab", "ba", "bb"}));
}

TEST(Mangle, Examples) {
  EXPECT_EQ(mangle(w("player"), {MangleRule::firstcap()}), words({"player", "Player"}));
  EXPECT_EQ(mangle(w("player"), {MangleRule::leet()}), words({"player", "p1@y3r"}));
  EXPECT_EQ(mangle(w("Ox"), {MangleRule::allcaps()}), words({"Ox", "OX"}));
}

TEST(Mangle, DropsDuplicatesKeepingFirst) {
  EXPECT_EQ(mangle(w("Ox"), {MangleRule::firstcap()}), words({"Ox"}));
  EXPECT_EQ(mangle(w("xyz"), {MangleRule::leet(), MangleRule::identity()}), words({"xyz"}));
  EXPECT_EQ(mangle(w("ab"), {MangleRule::allcaps(), MangleRule::allcase()}), words({"ab", "AB", "Ab", "aB"}));
  EXPECT_EQ(mangle(w("a"), {MangleRule::suffix_digits(1)}).size(), 11u);
}

TEST(Mangle, BlockSizeMatchesMaterializedBlock) {
  Gen gen(11);
  for (int i = 0; i < 500; ++i) {
    const Word base = gen.word(U"aAeoslx1", 1, 6);
    const auto rules = gen.rules();
    EXPECT_EQ(variant_block_size(base, rules), mangle(base, rules).size()) << to_utf8(base);
  }
}

TEST(Mangle, VariantsShareTheBaseKey) {
  Gen gen(12);
  for (int i = 0; i < 500; ++i) {
    const Word base = gen.word(U"aAeEiIlLoOsSxX0135@$", 1, 6);
    for (const Word& v : mangle(base, gen.rules())) EXPECT_EQ(detail::variant_key(v), detail::variant_key(base));
  }
}

TEST(Intersection, Examples) {
  const auto d4 = LayerSpec::exhaustive(digits(), 4, 4);
  EXPECT_EQ(intersection_size(d4, LayerSpec::exhaustive(lower(), 4, 4)), Natural(0));
  const Alphabet mixed("digits+lower", U"0123456789abcdefghijklmnopqrstuvwxyz");
  EXPECT_EQ(intersection_size(d4, LayerSpec::exhaustive(mixed, 4, 4)), Natural(10000));
}

TEST(Intersection, UndecidableBeyondCap) {
  Gen gen(3);
  std::vector<Word> big;
  for (int i = 0; i < 200; ++i) big.push_back(ascii_word("w" + std::to_string(i)));
  auto src = make_source("big", big);
  const auto mangled = LayerSpec::mangled(src, {MangleRule::leet()});
  const auto combined = LayerSpec::combined(src, 2);
  EXPECT_EQ(intersection_size(mangled, combined, 100), std::nullopt);
}

TEST(EffectiveLayers, Examples) {
  auto eff = effective_layers({LayerSpec::exhaustive(digits(), 4, 4),
                               LayerSpec::wordlist(make_source("p", words({"1234", "dragon"})))},
                              false);
  ASSERT_EQ(eff.layers.size(), 2u);
  EXPECT_EQ(eff.layers[0].effective_size, 10000);
  EXPECT_EQ(eff.layers[1].effective_size, 1);

  eff = effective_layers({LayerSpec::wordlist(make_source("a", words({"x", "y"}))),
                          LayerSpec::wordlist(make_source("b", words({"z"})))},
                         false);
  EXPECT_EQ(eff.layers[0].effective_size, 2);
  EXPECT_EQ(eff.layers[1].effective_size, 1);
}

TEST(EffectiveLayers, UndecidableUnlessAssumedDisjoint) {
  std::vector<Word> big;
  for (int i = 0; i < 200; ++i) big.push_back(ascii_word("w" + std::to_string(i)));
  auto src = make_source("big", big);
  const std::vector<LayerSpec> layers{LayerSpec::mangled(src, {MangleRule::leet()}), LayerSpec::combined(src, 2)};
  try {
    (void)effective_layers(layers, false, 100);
    FAIL() << "expected UndecidableOverlap";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndecidableOverlap);
    EXPECT_NE(std::string(e.what()).find("layers 1 and 2"), std::string::npos);
  }
  const auto eff = effective_layers(layers, true, 100);
  EXPECT_EQ(eff.layers[1].effective_size, 40000);
}

TEST(EffectiveLayers, DropsFullyCoveredLayersWithWarning) {
  const auto eff = effective_layers(
      {LayerSpec::exhaustive(digits(), 1, 2), LayerSpec::wordlist(make_source("p", words({"7", "42"})))}, false);
  EXPECT_EQ(eff.layers.size(), 1u);
  ASSERT_EQ(eff.warnings.size(), 1u);
  EXPECT_NE(eff.warnings[0].find("layer 2"), std::string::npos);
}

TEST(EffectiveLayers, ThreeWayOverlapIsNotDoubleCounted) {
  // Digits of length 2 sit inside both earlier layers and the last one.
  const Alphabet ab01("ab01", U"ab01");
  const Alphabet a01("a01", U"a01");
  auto eff = effective_layers({LayerSpec::exhaustive(digits(), 2, 2), LayerSpec::exhaustive(a01, 2, 2),
                               LayerSpec::exhaustive(ab01, 1, 2)},
                              false, 10);
  ASSERT_EQ(eff.layers.size(), 3u);
  EXPECT_EQ(eff.layers[1].effective_size, 9 - 4);
  EXPECT_EQ(eff.layers[2].effective_size, 4 + 16 - 4 - 5);
}

// Properties over random small layers, checked against brute-force sets.

TEST(LayerProperties, EnumerateMatchesDeclaredSet) {
  Gen gen(2024);
  for (int i = 0; i < 300; ++i) {
    const LayerSpec layer = gen.layer();
    const std::set<Word> oracle = testing::brute_force_set(layer);
    std::vector<Word> emitted;
    for_each_word(layer, [&](const Word& x) {
      emitted.push_back(x);
      return true;
    });
    const std::set<Word> distinct(emitted.begin(), emitted.end());
    EXPECT_EQ(distinct.size(), emitted.size()) << layer.kind_name() << " emitted a duplicate";
    EXPECT_EQ(distinct, oracle) << layer.kind_name();
    EXPECT_EQ(cardinality(layer), oracle.size()) << layer.kind_name();
    for (const Word& x : emitted) ASSERT_TRUE(contains(layer, x)) << to_utf8(x);
  }
}

TEST(LayerProperties, ContainsAgreesWithOracleOffTheSet) {
  Gen gen(77);
  for (int i = 0; i < 200; ++i) {
    const LayerSpec layer = gen.layer();
    const std::set<Word> oracle = testing::brute_force_set(layer);
    for (int j = 0; j < 40; ++j) {
      const Word probe = gen.word(U"abAB01-@$o", 1, 7);
      EXPECT_EQ(contains(layer, probe), oracle.count(probe) == 1) << layer.kind_name() << " " << to_utf8(probe);
    }
  }
}

TEST(LayerProperties, MangledBlocksStartWithIdentity) {
  Gen gen(5);
  for (int i = 0; i < 200; ++i) {
    const Word base = gen.word(U"abAB1so", 1, 5);
    EXPECT_EQ(mangle(base, gen.rules()).front(), base);
  }
}

TEST(LayerProperties, IntersectionSymmetricAndExact) {
  Gen gen(99);
  for (int i = 0; i < 200; ++i) {
    const LayerSpec a = gen.layer();
    const LayerSpec b = gen.layer();
    const auto ab = intersection_size(a, b);
    const auto ba = intersection_size(b, a);
    ASSERT_TRUE(ab && ba);
    EXPECT_EQ(*ab, *ba);
    const auto sa = testing::brute_force_set(a);
    const auto sb = testing::brute_force_set(b);
    std::size_t common = 0;
    for (const Word& x : sa) common += sb.count(x);
    EXPECT_EQ(*ab, common) << a.kind_name() << " x " << b.kind_name();
  }
}

TEST(LayerProperties, EffectiveSizesMatchBruteForceAndConserveTotals) {
  Gen gen(314);
  for (int i = 0; i < 150; ++i) {
    std::vector<LayerSpec> declared;
    const std::size_t n = gen.between(1, 5);
    for (std::size_t j = 0; j < n; ++j) declared.push_back(gen.layer());
    // A low cap pushes some layers through the non-explicit inclusion-exclusion path.
    const std::uint64_t cap = gen.coin() ? kDefaultMaterializeCap : 20;
    EffectiveLayers eff;
    try {
      eff = effective_layers(declared, false, cap);
    } catch (const Error& e) {
      ASSERT_TRUE(e.kind() == ErrorKind::UndecidableOverlap || e.kind() == ErrorKind::CapExceeded) << e.what();
      continue;
    }

    std::set<Word> seen;
    std::vector<Natural> expected;
    Natural declared_total = 0;
    for (const LayerSpec& l : declared) {
      std::size_t fresh = 0;
      for (const Word& x : testing::brute_force_set(l)) fresh += seen.insert(x).second ? 1 : 0;
      if (fresh) expected.push_back(fresh);
      declared_total += cardinality(l);
    }
    ASSERT_EQ(eff.layers.size(), expected.size());
    Natural effective_total = 0;
    for (std::size_t j = 0; j < expected.size(); ++j) {
      EXPECT_EQ(eff.layers[j].effective_size, expected[j]);
      effective_total += eff.layers[j].effective_size;
    }
    EXPECT_EQ(effective_total + eff.removed_overlap, declared_total);
  }
}

}  // namespace
}  // namespace guesscost

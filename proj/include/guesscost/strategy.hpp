#pragma once

#include "guesscost/cost.hpp"
#include "guesscost/error.hpp"
#include "guesscost/layer.hpp"
#include "guesscost/numeric.hpp"
#include "guesscost/word.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

namespace guesscost {

/// An attacker strategy: an ordered list of layers whose effective parts
/// L_k = AS_k \ AS_{k-1} are pairwise disjoint. All derived sizes are fixed
/// at construction.
class Strategy {
 public:
  explicit Strategy(std::vector<LayerSpec> layers, bool assume_disjoint = false,
                    std::uint64_t cap = kDefaultMaterializeCap)
      : declared_(std::move(layers)), assume_disjoint_(assume_disjoint), cap_(cap) {
    EffectiveLayers eff = effective_layers(declared_, assume_disjoint_, cap_);
    effective_ = std::move(eff.layers);
    warnings_ = std::move(eff.warnings);
    cumulative_.reserve(effective_.size() + 1);
    cumulative_.push_back(0);
    for (const auto& layer : effective_) cumulative_.push_back(cumulative_.back() + layer.effective_size);
  }

  const std::vector<LayerSpec>& declared() const noexcept { return declared_; }
  const std::vector<EffectiveLayer>& layers() const noexcept { return effective_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  bool assume_disjoint() const noexcept { return assume_disjoint_; }
  std::uint64_t cap() const noexcept { return cap_; }

  std::size_t size() const noexcept { return effective_.size(); }
  /// |AS_k|: words in effective layers 1..k. cumulative(0) == 0.
  const Natural& cumulative(std::size_t k) const { return cumulative_.at(k); }
  const Natural& total() const noexcept { return cumulative_.back(); }
  /// |L_k| for 1-based k.
  const Natural& layer_size(std::size_t k) const { return effective_.at(k - 1).effective_size; }

  /// Effective layer k (1-based) in canonical order, earlier layers' words removed.
  std::vector<Word> materialize_layer(std::size_t k) const {
    const EffectiveLayer& layer = effective_.at(k - 1);
    if (layer.effective_size > cap_) {
      throw Error(ErrorKind::CapExceeded, "layer " + std::to_string(k) + " has " + layer.effective_size.str() +
                                              " words (cap " + std::to_string(cap_) + ")");
    }
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(layer.effective_size));
    for_each_word(layer.spec, [&](const Word& w) {
      if (assume_disjoint_ || !covered_before(k, w)) out.push_back(w);
      return true;
    });
    return out;
  }

  /// Whether any effective layer before k (1-based) contains `w`.
  bool covered_before(std::size_t k, const Word& w) const {
    for (std::size_t j = 1; j < k; ++j) {
      if (contains(effective_[j - 1].spec, w, cap_)) return true;
    }
    return false;
  }

 private:
  std::vector<LayerSpec> declared_;
  bool assume_disjoint_;
  std::uint64_t cap_;
  std::vector<EffectiveLayer> effective_;
  std::vector<std::string> warnings_;
  std::vector<Natural> cumulative_;
};

/// 1-based index of the effective layer that contains `pw`.
inline std::size_t locate(const Strategy& strategy, const Word& pw) {
  if (strategy.size() == 0) throw Error(ErrorKind::Domain, "strategy has no layers");
  for (std::size_t k = 1; k <= strategy.size(); ++k) {
    if (contains(strategy.layers()[k - 1].spec, pw, strategy.cap())) return k;
  }
  throw NotCoveredError(strategy.total());
}

struct StrengthReport {
  std::size_t layer_index;
  Natural preceding;
  Natural layer_size;
  CostValue strength;
  double bits;
};

/// Guesses spent on all earlier layers plus the brute-force cost of the
/// password's own layer.
inline CostValue layer_strength(const Strategy& strategy, std::size_t k) {
  return CostValue(Rational(strategy.cumulative(k - 1)) + bf_cost(strategy.layer_size(k)).value());
}

inline StrengthReport strength(const Strategy& strategy, const Word& pw) {
  const std::size_t k = locate(strategy, pw);
  CostValue s = layer_strength(strategy, k);
  const double bits = to_bits(s);
  return {k, strategy.cumulative(k - 1), strategy.layer_size(k), std::move(s), bits};
}

/// Uniform over effective layer `k` (1-based).
struct LayerIndex {
  std::size_t k;
  friend bool operator==(const LayerIndex&, const LayerIndex&) = default;
};

using Target = std::variant<LayerIndex, Word>;

/// Weighted defender population. Weights are normalized to sum to one.
class Distribution {
 public:
  struct Entry {
    Target target;
    Rational weight;
  };

  explicit Distribution(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw Error(ErrorKind::EmptyDistribution, "distribution has no entries");
    Rational total = 0;
    for (const Entry& e : entries_) {
      if (e.weight <= 0) throw Error(ErrorKind::NonPositiveWeight, "weights must be positive");
      if (auto idx = std::get_if<LayerIndex>(&e.target); idx && idx->k == 0) {
        throw Error(ErrorKind::Domain, "layer indices are 1-based");
      }
      total += e.weight;
    }
    if (total == 0) throw Error(ErrorKind::ZeroTotalWeight, "total weight is zero");
    for (Entry& e : entries_) e.weight /= total;
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }

  bool uses_layer_index() const {
    for (const Entry& e : entries_) {
      if (std::holds_alternative<LayerIndex>(e.target)) return true;
    }
    return false;
  }

 private:
  std::vector<Entry> entries_;
};

/// Strength of a single distribution target.
inline CostValue target_cost(const Strategy& strategy, const Target& target) {
  if (auto idx = std::get_if<LayerIndex>(&target)) {
    if (idx->k > strategy.size()) {
      throw Error(ErrorKind::Domain, "layer " + std::to_string(idx->k) + " does not exist (strategy has " +
                                         std::to_string(strategy.size()) + ")");
    }
    return layer_strength(strategy, idx->k);
  }
  return strength(strategy, std::get<Word>(target)).strength;
}

inline CostValue expected_cost(const Strategy& strategy, const Distribution& dist) {
  Rational sum = 0;
  for (const auto& entry : dist.entries()) sum += entry.weight * target_cost(strategy, entry.target).value();
  return CostValue(std::move(sum));
}

struct MergedDictionaries {
  std::vector<Word> first;
  std::vector<Word> second;
};

/// Reduces two dictionaries to reorderings of one word set: d1 gets d2 \ d1
/// appended, d2 gets d1 \ d2 appended.
inline MergedDictionaries merge_dictionaries(const std::vector<Word>& d1, const std::vector<Word>& d2) {
  auto as_set = [](const std::vector<Word>& d, const char* which) {
    std::unordered_set<Word> s;
    for (const Word& w : d) {
      if (!s.insert(w).second) {
        throw Error(ErrorKind::DuplicateInInput, std::string(which) + " repeats '" + to_utf8(w) + "'");
      }
    }
    return s;
  };
  const auto s1 = as_set(d1, "first dictionary");
  const auto s2 = as_set(d2, "second dictionary");
  MergedDictionaries out{d1, d2};
  for (const Word& w : d2) {
    if (!s1.count(w)) out.first.push_back(w);
  }
  for (const Word& w : d1) {
    if (!s2.count(w)) out.second.push_back(w);
  }
  return out;
}

}  // namespace guesscost

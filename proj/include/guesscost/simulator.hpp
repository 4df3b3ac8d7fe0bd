#pragma once

#include "guesscost/cost.hpp"
#include "guesscost/error.hpp"
#include "guesscost/numeric.hpp"
#include "guesscost/rng.hpp"
#include "guesscost/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace guesscost {

/// shuffle: shuffle the target's layer and find the target in it.
/// rank: draw the in-layer position directly.
/// full: shuffle every layer, walk the whole ordered dictionary until the target.
enum class SimMode { Shuffle, Rank, Full };

inline const char* to_string(SimMode mode) {
  switch (mode) {
    case SimMode::Shuffle: return "shuffle";
    case SimMode::Rank: return "rank";
    case SimMode::Full: return "full";
  }
  return "?";
}

inline std::optional<SimMode> sim_mode_from_string(const std::string& s) {
  if (s == "shuffle") return SimMode::Shuffle;
  if (s == "rank") return SimMode::Rank;
  if (s == "full") return SimMode::Full;
  return std::nullopt;
}

struct SimConfig {
  SimMode mode = SimMode::Shuffle;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t materialize_cap = kDefaultMaterializeCap;
  unsigned threads = 1;
};

struct TrialStats {
  std::uint64_t count = 0;
  Rational mean_exact = 0;
  double mean = 0;
  double stddev = 0;  // sample standard deviation (n-1)
  double standard_error = 0;
  Natural min = 0;
  Natural max = 0;

  friend bool operator==(const TrialStats&, const TrialStats&) = default;
};

/// Runs guessing attacks against one strategy. Materialized layers are
/// cached and shared between threads.
class AttackSimulator {
 public:
  AttackSimulator(const Strategy& strategy, std::uint64_t cap = kDefaultMaterializeCap)
      : strategy_(strategy), cap_(cap) {}

  /// Attack length for a target given as (layer k, index within the layer's canonical order).
  Natural attack_length(std::size_t k, const Natural& index, SimMode mode, SplitMix64& rng) const {
    switch (mode) {
      case SimMode::Rank:
        return strategy_.cumulative(k - 1) + uniform_below(rng, strategy_.layer_size(k)) + 1;
      case SimMode::Shuffle: {
        const Layer& layer = materialized(k);
        const std::size_t pos = fisher_yates_position(layer.words.size(), static_cast<std::size_t>(index), rng);
        return strategy_.cumulative(k - 1) + pos + 1;
      }
      case SimMode::Full: return full_walk(materialized(k).words.at(static_cast<std::size_t>(index)), rng);
    }
    return 0;
  }

  /// Canonical index of `w` inside effective layer k. Needs k materialized.
  std::size_t index_in_layer(std::size_t k, const Word& w) const {
    const Layer& layer = materialized(k);
    auto it = layer.index.find(w);
    if (it == layer.index.end()) throw NotCoveredError(strategy_.total());
    return it->second;
  }

  const Word& word_at(std::size_t k, std::size_t index) const { return materialized(k).words.at(index); }

  const Strategy& strategy() const noexcept { return strategy_; }

 private:
  struct Layer {
    std::vector<Word> words;
    std::unordered_map<Word, std::size_t> index;
  };

  const Layer& materialized(std::size_t k) const {
    std::lock_guard lock(mutex_);
    auto it = layers_.find(k);
    if (it != layers_.end()) return *it->second;
    if (strategy_.layer_size(k) > cap_) {
      throw Error(ErrorKind::CapExceeded, "layer " + std::to_string(k) + " has " + strategy_.layer_size(k).str() +
                                              " words, above the materialization cap " + std::to_string(cap_));
    }
    auto layer = std::make_unique<Layer>();
    layer->words = strategy_.materialize_layer(k);
    layer->index.reserve(layer->words.size());
    for (std::size_t i = 0; i < layer->words.size(); ++i) layer->index.emplace(layer->words[i], i);
    return *layers_.emplace(k, std::move(layer)).first->second;
  }

  // Literal attack: every layer shuffled in turn, words tried one by one.
  Natural full_walk(const Word& target, SplitMix64& rng) const {
    if (strategy_.total() > cap_) {
      throw Error(ErrorKind::CapExceeded, "full mode needs the whole dictionary (" + strategy_.total().str() +
                                              " words) under the cap " + std::to_string(cap_));
    }
    std::uint64_t tried = 0;
    std::optional<std::uint64_t> found;
    for (std::size_t k = 1; k <= strategy_.size(); ++k) {
      std::vector<const Word*> order;
      for (const Word& w : materialized(k).words) order.push_back(&w);
      fisher_yates(std::span<const Word*>(order), rng);
      for (const Word* w : order) {
        ++tried;
        if (!found && *w == target) found = tried;
      }
    }
    if (!found) throw NotCoveredError(strategy_.total());
    return *found;
  }

  const Strategy& strategy_;
  std::uint64_t cap_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::unique_ptr<Layer>> layers_;
};

/// One attack on `target` with a generator seeded by `seed`.
inline Natural simulate_attack(const Strategy& strategy, const Word& target, std::uint64_t seed, SimMode mode,
                               std::uint64_t cap = kDefaultMaterializeCap) {
  const std::size_t k = locate(strategy, target);
  AttackSimulator sim(strategy, cap);
  const Natural index = mode == SimMode::Rank ? Natural(0) : Natural(sim.index_in_layer(k, target));
  SplitMix64 rng(seed);
  return sim.attack_length(k, index, mode, rng);
}

namespace detail {

struct Partial {
  std::uint64_t count = 0;
  Natural sum = 0;
  Natural sum_squares = 0;
  Natural min = 0;
  Natural max = 0;

  void add(const Natural& x) {
    if (count == 0 || x < min) min = x;
    if (count == 0 || x > max) max = x;
    ++count;
    sum += x;
    sum_squares += x * x;
  }

  void merge(const Partial& other) {
    if (other.count == 0) return;
    if (count == 0 || other.min < min) min = other.min;
    if (count == 0 || other.max > max) max = other.max;
    count += other.count;
    sum += other.sum;
    sum_squares += other.sum_squares;
  }
};

/// Entry sampler: integer weights over the common denominator of the weights.
struct EntryPicker {
  std::vector<Natural> cumulative;
  Natural total = 0;

  explicit EntryPicker(const Distribution& dist) {
    Natural lcm = 1;
    for (const auto& e : dist.entries()) {
      const Natural d = denominator_of(e.weight);
      lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    for (const auto& e : dist.entries()) {
      total += numerator_of(e.weight) * (lcm / denominator_of(e.weight));
      cumulative.push_back(total);
    }
  }

  std::size_t pick(SplitMix64& rng) const {
    const Natural u = uniform_below(rng, total);
    return static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
  }
};

inline TrialStats finish(const Partial& p) {
  TrialStats s;
  s.count = p.count;
  s.min = p.min;
  s.max = p.max;
  if (p.count == 0) return s;
  const Natural n = p.count;
  s.mean_exact = Rational(p.sum, n);
  s.mean = to_double(s.mean_exact);
  if (p.count > 1) {
    const Rational variance(n * p.sum_squares - p.sum * p.sum, n * (n - 1));
    s.stddev = std::sqrt(to_double(variance));
  }
  s.standard_error = s.stddev / std::sqrt(static_cast<double>(p.count));
  return s;
}

}  // namespace detail

/// Monte Carlo estimate of the attack length under `dist`. Trial i uses the
/// generator seeded with trial_seed(cfg.seed, i): it draws the distribution
/// entry, then (for layer targets) the in-layer index, then runs the attack.
/// Output depends only on (strategy, dist, cfg minus threads).
inline TrialStats run_trials(const Strategy& strategy, const Distribution& dist, const SimConfig& cfg) {
  if (cfg.trials == 0) throw Error(ErrorKind::Domain, "need at least one trial");
  AttackSimulator sim(strategy, cfg.materialize_cap);
  const detail::EntryPicker picker(dist);

  // Resolve word targets once: (layer, canonical index).
  struct Resolved {
    std::size_t k = 0;
    std::size_t index = 0;
  };
  std::vector<Resolved> resolved(dist.entries().size());
  for (std::size_t e = 0; e < dist.entries().size(); ++e) {
    const Target& t = dist.entries()[e].target;
    if (auto idx = std::get_if<LayerIndex>(&t)) {
      if (idx->k > strategy.size()) throw Error(ErrorKind::Domain, "layer " + std::to_string(idx->k) + " does not exist");
      resolved[e].k = idx->k;
      if (cfg.mode != SimMode::Rank) (void)sim.word_at(idx->k, 0);  // surface CapExceeded early
    } else {
      const Word& w = std::get<Word>(t);
      resolved[e].k = locate(strategy, w);
      if (cfg.mode != SimMode::Rank) resolved[e].index = sim.index_in_layer(resolved[e].k, w);
    }
  }

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    detail::Partial part;
    for (std::uint64_t i = begin; i < end; ++i) {
      SplitMix64 rng(trial_seed(cfg.seed, i));
      const std::size_t e = picker.pick(rng);
      const Resolved& r = resolved[e];
      Natural index = r.index;
      if (std::holds_alternative<LayerIndex>(dist.entries()[e].target)) {
        index = uniform_below(rng, strategy.layer_size(r.k));
      }
      part.add(sim.attack_length(r.k, index, cfg.mode, rng));
    }
    return part;
  };

  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(cfg.threads == 0 ? 1 : cfg.threads, 1, cfg.trials));
  std::vector<detail::Partial> partials(threads);
  if (threads == 1) {
    partials[0] = run_range(0, cfg.trials);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t begin = cfg.trials * t / threads;
        const std::uint64_t end = cfg.trials * (t + 1) / threads;
        pool.emplace_back([&, t, begin, end] {
          try {
            partials[t] = run_range(begin, end);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }
  detail::Partial total;
  for (const auto& p : partials) total.merge(p);
  return detail::finish(total);
}

struct VerifyReport {
  TrialStats stats;
  CostValue analytic;
  double difference;  // |empirical mean - analytic|
  double margin;      // z * standard error
  bool pass;
};

/// Pass iff the empirical mean lies within z standard errors of `analytic`.
inline VerifyReport verify_against(const TrialStats& stats, const CostValue& analytic, double z) {
  if (!(z > 0)) throw Error(ErrorKind::Domain, "z must be positive");
  Rational diff = stats.mean_exact - analytic.value();
  if (diff < 0) diff = -diff;
  const double difference = to_double(diff);
  const double margin = z * stats.standard_error;
  const bool pass = stats.standard_error == 0 ? diff == 0 : difference <= margin;
  return {stats, analytic, difference, margin, pass};
}

inline VerifyReport verify_analytic(const Strategy& strategy, const Distribution& dist, const SimConfig& cfg,
                                    double z) {
  if (!(z > 0)) throw Error(ErrorKind::Domain, "z must be positive");
  const CostValue analytic = expected_cost(strategy, dist);
  return verify_against(run_trials(strategy, dist, cfg), analytic, z);
}

}  // namespace guesscost

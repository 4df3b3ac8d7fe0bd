#pragma once

#include "guesscost/numeric.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace guesscost {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// splitmix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Reference generator. The stream for a given seed is part of the output
/// contract: simulations must reproduce bit-for-bit across builds.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }
  constexpr std::uint64_t operator()() noexcept { return next(); }

  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return std::numeric_limits<std::uint64_t>::max(); }

 private:
  std::uint64_t state_;
};

/// Seed of trial i; independent of how trials are scheduled.
constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  return mix64(seed ^ (trial * kGoldenGamma));
}

/// Uniform integer in [0, m), m >= 1. Rejects draws >= floor(2^64/m)*m.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t m) {
  const unsigned __int128 range = static_cast<unsigned __int128>(1) << 64;
  const unsigned __int128 limit = range - range % m;
  while (true) {
    const std::uint64_t x = rng.next();
    if (x < limit) return x % m;
  }
}

/// Uniform natural in [0, m). Above 2^64, draws ceil(bits/64) words (first
/// draw most significant), masks to the bit length of m-1 and rejects >= m.
inline Natural uniform_below(SplitMix64& rng, const Natural& m) {
  if (m <= std::numeric_limits<std::uint64_t>::max()) {
    return uniform_below(rng, static_cast<std::uint64_t>(m));
  }
  const Natural top = m - 1;
  const unsigned bits = boost::multiprecision::msb(top) + 1;
  const unsigned words = (bits + 63) / 64;
  const Natural mask = (Natural(1) << bits) - 1;
  while (true) {
    Natural x = 0;
    for (unsigned i = 0; i < words; ++i) x = (x << 64) | Natural(rng.next());
    x &= mask;
    if (x < m) return x;
  }
}

/// Fisher-Yates from the last index down to 1, swapping with a uniform index in [0, i].
template <class T>
void fisher_yates(std::span<T> items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i-- > 1;) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
    using std::swap;
    swap(items[i], items[j]);
  }
}

/// Final position of the element starting at `pos` after fisher_yates on n
/// elements, consuming the generator identically but without the array.
inline std::size_t fisher_yates_position(std::size_t n, std::size_t pos, SplitMix64& rng) {
  for (std::size_t i = n; i-- > 1;) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
    if (pos == i) {
      pos = j;
    } else if (pos == j) {
      pos = i;
    }
  }
  return pos;
}

}  // namespace guesscost

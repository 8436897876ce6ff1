#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace nibble {

// Random numbers are fully specified here rather than taken from <random> so
// that traces are bit-identical across standard library implementations.
//
// Two generators are used:
//   * keyed draws: a uniform value is a pure function of
//     (seed, stream, round, vertex, color), computed by chaining the
//     SplitMix64 finalizer over the key words. Decisions made inside a round
//     therefore do not depend on iteration order or thread scheduling.
//   * Xoshiro256**: sequential streams (generators, completion, trials),
//     seeded by SplitMix64 expansion of a derived 64-bit key.

/// SplitMix64 output finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  state += kGolden;
  return mix64(state);
}

/// Hash of a seed and an ordered list of key words.
constexpr std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = mix64(seed + kGolden);
  std::uint64_t i = 1;
  for (std::uint64_t w : words) {
    h = mix64(h ^ mix64(w + i * kGolden));
    ++i;
  }
  return h;
}

/// Top 53 bits as a double in [0, 1).
constexpr double to_unit_double(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Stream identifiers for keyed draws and derived sequential streams.
enum class Stream : std::uint64_t {
  phase1_assign = 1,
  phase2_equalize = 2,
  completion = 3,
  generator = 4,
  trial = 5,
};

/// Keyed uniform for one (round, vertex, color) decision.
constexpr double keyed_uniform(std::uint64_t seed, Stream stream, std::uint64_t round, std::uint64_t vertex,
                               std::uint64_t color) noexcept {
  return to_unit_double(derive_key(seed, {static_cast<std::uint64_t>(stream), round, vertex, color}));
}

/// Xoshiro256** 1.0 (Blackman, Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64_next(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  constexpr double uniform() noexcept { return to_unit_double((*this)()); }

  constexpr bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Uniform integer in [0, bound) by Lemire's multiply-and-reject. bound > 0.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    std::uint64_t x = (*this)();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
};

/// Sequential stream for (seed, stream, a, b).
inline Xoshiro256 make_stream(std::uint64_t seed, Stream stream, std::uint64_t a = 0, std::uint64_t b = 0) {
  return Xoshiro256(derive_key(seed, {static_cast<std::uint64_t>(stream), a, b}));
}

}  // namespace nibble

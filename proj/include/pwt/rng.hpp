#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>

namespace pwt {

/// SplitMix64 finalizer. Bijective on 64-bit words.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/**
 * Derives an independent stream seed from a base seed and a list of stream
 * coordinates. Every experiment run uses
 *
 *   derive_seed(baseSeed, {instanceId, algorithmId, repetition})
 *
 * and every generated instance uses derive_seed(baseSeed, {tag, n, index}).
 * The fold is h <- mix64(h + gamma * (k + 1) + part_k), starting at
 * h = mix64(base).
 */
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t base,
                                                  std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = mix64(base);
  std::uint64_t k = 1;
  for (auto part : parts) {
    h = mix64(h + kGoldenGamma * k + part);
    ++k;
  }
  return h;
}

/**
 * Counter-based SplitMix64 generator: the i-th output is mix64(seed + i * gamma).
 *
 * All sampling helpers below are defined in terms of next() only, so a run
 * is reproducible bit-for-bit on any platform and standard library (unlike
 * the std:: distributions, whose algorithms are implementation-defined).
 */
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept { return next(); }

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform integer in the closed interval [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /**
   * Number of failures before the first success of a Bernoulli(p) sequence.
   * Used to jump between flipped positions of standard bit mutation.
   */
  std::uint64_t geometric(double p) noexcept {
    if (p >= 1.0) return 0;
    const double u = 1.0 - uniform01();  // (0, 1]
    const double g = std::floor(std::log(u) / std::log1p(-p));
    if (!(g < 1.8e19)) return ~std::uint64_t{0};
    return static_cast<std::uint64_t>(g);
  }

  [[nodiscard]] constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace pwt

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pwt/instance.hpp"
#include "pwt/rng.hpp"

namespace pwt {

inline constexpr std::int64_t kCorrelatedCapacity = 8000;
inline constexpr std::int64_t kUniformCapacity = 72;

struct IntRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1000;
};

/// Random instance parameters; defaults are the standard benchmark constants.
struct GenParams {
  std::size_t n = 300;
  IntRange profit_range{1, 1000};
  IntRange weight_range{1, 1000};
  double distance = 50.0;
  double renting_rate = 70.0;
  double v_max = 1.0;
  double v_min = 0.1;
  std::optional<std::int64_t> capacity;  ///< 8000 for correlated, 72 for uniform when unset
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (profit_range.lo < 1 || profit_range.lo > profit_range.hi) throw std::invalid_argument("bad profit range");
    if (weight_range.lo < 1 || weight_range.lo > weight_range.hi) throw std::invalid_argument("bad weight range");
    if (!(v_min > 0.0) || !(v_min < v_max)) throw std::invalid_argument("velocities must satisfy 0 < vMin < vMax");
    if (capacity && *capacity < 1) throw std::invalid_argument("capacity must be positive");
  }
};

namespace detail {

/// Profits sorted descending, drawn first from the stream so that the
/// correlated and uniform generators share them for the same seed.
inline std::vector<std::int64_t> draw_profits(const GenParams& p, SplitMix64& rng) {
  std::vector<std::int64_t> profits(p.n);
  for (auto& v : profits) v = rng.between(p.profit_range.lo, p.profit_range.hi);
  std::sort(profits.begin(), profits.end(), std::greater<>{});
  return profits;
}

}  // namespace detail

/// Profits and weights drawn independently, then paired in sorted order.
[[nodiscard]] inline Instance gen_correlated(const GenParams& p) {
  p.validate();
  SplitMix64 rng(p.seed);
  const auto profits = detail::draw_profits(p, rng);
  std::vector<std::int64_t> weights(p.n);
  for (auto& v : weights) v = rng.between(p.weight_range.lo, p.weight_range.hi);
  std::sort(weights.begin(), weights.end());
  std::vector<Item> items(p.n);
  for (std::size_t i = 0; i < p.n; ++i) items[i] = {profits[i], weights[i]};
  return Instance::two_city(std::move(items), p.distance, p.renting_rate, p.v_min, p.v_max,
                            p.capacity.value_or(kCorrelatedCapacity));
}

/// Same profits as gen_correlated for the same seed, every weight 1.
[[nodiscard]] inline Instance gen_uniform(const GenParams& p) {
  p.validate();
  SplitMix64 rng(p.seed);
  const auto profits = detail::draw_profits(p, rng);
  std::vector<Item> items(p.n);
  for (std::size_t i = 0; i < p.n; ++i) items[i] = {profits[i], 1};
  return Instance::two_city(std::move(items), p.distance, p.renting_rate, p.v_min, p.v_max,
                            p.capacity.value_or(kUniformCapacity));
}

/// Longest prefix (in item order) whose total weight fits the budget.
[[nodiscard]] inline std::size_t max_prefix_within(const Instance& inst, std::int64_t budget) {
  std::int64_t w = 0;
  std::size_t count = 0;
  for (const auto& it : inst.items()) {
    if (w + it.weight > budget) break;
    w += it.weight;
    ++count;
  }
  return count;
}

/**
 * Capacity for uniform-weight instances: the mean over correlated
 * instances of the longest sorted prefix fitting `budget`, rounded half
 * to even.
 */
[[nodiscard]] inline std::int64_t derive_uniform_capacity(std::span<const Instance> correlated, std::int64_t budget) {
  if (correlated.empty()) throw std::invalid_argument("derive_uniform_capacity needs at least one instance");
  if (budget < 1) throw std::invalid_argument("budget must be positive");
  std::int64_t total = 0;
  for (const auto& inst : correlated) {
    require_correlated(inst, "derive_uniform_capacity");
    total += static_cast<std::int64_t>(max_prefix_within(inst, budget));
  }
  const double mean = static_cast<double>(total) / static_cast<double>(correlated.size());
  return static_cast<std::int64_t>(std::nearbyint(mean));
}

}  // namespace pwt

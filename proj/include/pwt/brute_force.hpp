#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pwt/evaluate.hpp"
#include "pwt/instance.hpp"
#include "pwt/solution.hpp"

namespace pwt {

inline constexpr std::size_t kBruteForceLimit = 20;

namespace detail {

inline void require_enumerable(const Instance& inst, std::size_t limit, const char* what) {
  if (inst.size() > limit || inst.size() >= 63) {
    throw std::invalid_argument(std::string(what) + ": n = " + std::to_string(inst.size()) +
                                " exceeds the enumeration limit " + std::to_string(limit));
  }
}

/// Bit vector for enumeration index `mask`; item 0 is the most significant bit,
/// so increasing masks enumerate bit vectors in lexicographic order.
inline std::vector<std::uint8_t> bits_of(std::uint64_t mask, std::size_t n) {
  std::vector<std::uint8_t> bits(n, 0);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((mask >> (n - 1 - i)) & 1U);
  return bits;
}

}  // namespace detail

struct BruteForceOptimum {
  Solution solution;
  double benefit = 0.0;
};

/**
 * Exhaustive feasible maximiser of B. Among maximisers (within the benefit
 * tolerance) the lexicographically smallest bit vector wins.
 */
[[nodiscard]] inline BruteForceOptimum brute_force_optimum(const Instance& inst,
                                                           std::size_t limit = kBruteForceLimit) {
  detail::require_enumerable(inst, limit, "brute_force_optimum");
  const std::size_t n = inst.size();
  std::uint64_t best_mask = 0;
  double best = 0.0;
  bool found = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const Solution s = Solution::from_bits(inst, detail::bits_of(mask, n));
    if (s.weight() > inst.capacity()) continue;
    const double b = benefit(inst, s);
    // Masks increase lexicographically, so an equal benefit never replaces the incumbent.
    if (!found || compare_benefit(b, best) > 0) {
      best = b;
      best_mask = mask;
      found = true;
    }
  }
  return {Solution::from_bits(inst, detail::bits_of(best_mask, n)), best};
}

/**
 * All solutions not strongly dominated in the (W, F) bi-objective, one
 * representative (the lexicographically smallest) per distinct (W, B)
 * point. Quadratic in 2^n.
 */
[[nodiscard]] inline std::vector<Solution> brute_force_pareto_front(const Instance& inst,
                                                                    std::size_t limit = kBruteForceLimit) {
  detail::require_enumerable(inst, limit, "brute_force_pareto_front");
  const std::size_t n = inst.size();
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Objectives> obj;
  obj.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    obj.push_back(objectives(inst, Solution::from_bits(inst, detail::bits_of(mask, n))));
  }
  std::vector<Solution> front;
  std::vector<Objectives> kept;
  for (std::uint64_t a = 0; a < count; ++a) {
    bool dominated = false;
    for (std::uint64_t b = 0; b < count && !dominated; ++b) {
      dominated = b != a && strongly_dominates(obj[b], obj[a]);
    }
    if (dominated) continue;
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const Objectives& o) {
      return o.weight == obj[a].weight && benefits_equal(o.fitness.benefit, obj[a].fitness.benefit);
    });
    if (duplicate) continue;
    kept.push_back(obj[a]);
    front.push_back(Solution::from_bits(inst, detail::bits_of(a, n)));
  }
  return front;
}

}  // namespace pwt

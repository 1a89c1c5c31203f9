#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>

#include "pwt/instance.hpp"
#include "pwt/solution.hpp"

namespace pwt {

/// Relative tolerance for benefit equality; absolute below magnitude 1.
inline constexpr double kBenefitTolerance = 1e-9;

[[nodiscard]] inline double tolerance_band(double a, double b) noexcept {
  return kBenefitTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

[[nodiscard]] inline bool benefits_equal(double a, double b) noexcept { return std::abs(a - b) <= tolerance_band(a, b); }

/// Three-way benefit comparison with the tolerance band.
[[nodiscard]] inline std::weak_ordering compare_benefit(double a, double b) noexcept {
  if (benefits_equal(a, b)) return std::weak_ordering::equivalent;
  return a < b ? std::weak_ordering::less : std::weak_ordering::greater;
}

/// Lexicographic fitness (q, B): q = min{C - W, 0} is the negated capacity violation.
struct Fitness {
  std::int64_t violation = 0;
  double benefit = 0.0;

  [[nodiscard]] bool feasible() const noexcept { return violation == 0; }
};

[[nodiscard]] inline std::weak_ordering compare_fitness(const Fitness& a, const Fitness& b) noexcept {
  if (a.violation != b.violation) {
    return a.violation < b.violation ? std::weak_ordering::less : std::weak_ordering::greater;
  }
  return compare_benefit(a.benefit, b.benefit);
}

[[nodiscard]] inline bool at_least_as_good(const Fitness& a, const Fitness& b) noexcept {
  return compare_fitness(a, b) >= 0;
}

[[nodiscard]] inline std::int64_t violation_for_weight(const Instance& inst, std::int64_t weight) noexcept {
  return std::min<std::int64_t>(inst.capacity() - weight, 0);
}

/// Vehicle speed with the given load; pinned to vMin once the load reaches C.
[[nodiscard]] inline double speed_for_load(const Instance& inst, std::int64_t load) noexcept {
  if (load >= inst.capacity()) return inst.v_min();
  return inst.v_max() - inst.nu() * static_cast<double>(load);
}

/// Two-city travel time for total load W.
[[nodiscard]] inline double travel_time_for_load(const Instance& inst, std::int64_t load) noexcept {
  return inst.distances().front() / speed_for_load(inst, load);
}

[[nodiscard]] inline std::int64_t total_weight(const Instance& inst, const Solution& s) {
  std::int64_t w = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (s[i]) w += inst.items()[i].weight;
  }
  return w;
}

[[nodiscard]] inline std::int64_t total_profit(const Instance& inst, const Solution& s) {
  std::int64_t p = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (s[i]) p += inst.items()[i].profit;
  }
  return p;
}

/// Sum over legs of d_i / speed(load carried after city i).
[[nodiscard]] inline double travel_time(const Instance& inst, const Solution& s) {
  const auto& dist = inst.distances();
  const auto& loads = s.city_weights();
  double t = 0.0;
  std::int64_t carried = 0;
  for (std::size_t leg = 0; leg < dist.size(); ++leg) {
    carried += loads[leg];
    t += dist[leg] / speed_for_load(inst, carried);
  }
  return t;
}

[[nodiscard]] inline double benefit(const Instance& inst, const Solution& s) {
  return static_cast<double>(s.profit()) - inst.renting_rate() * travel_time(inst, s);
}

[[nodiscard]] inline Fitness fitness(const Instance& inst, const Solution& s) {
  return {violation_for_weight(inst, s.weight()), benefit(inst, s)};
}

/// Objective pair of the bi-objective formulation: minimise W, maximise F.
struct Objectives {
  std::int64_t weight = 0;
  Fitness fitness;
};

[[nodiscard]] inline Objectives objectives(const Instance& inst, const Solution& s) {
  return {s.weight(), fitness(inst, s)};
}

/**
 * Offspring objectives for `parent` with the given positions flipped,
 * without materialising the offspring. O(|flips|) for two-city instances,
 * O(|flips| * m) in general.
 */
[[nodiscard]] inline Objectives objectives_after_flips(const Instance& inst, const Solution& parent,
                                                       std::span<const std::size_t> flips) {
  std::int64_t dw = 0;
  std::int64_t dp = 0;
  for (std::size_t i : flips) {
    const Item& it = inst.items()[i];
    const std::int64_t sign = parent[i] ? -1 : 1;
    dw += sign * it.weight;
    dp += sign * it.profit;
  }
  const std::int64_t weight = parent.weight() + dw;
  double time = 0.0;
  if (inst.two_city()) {
    time = travel_time_for_load(inst, weight);
  } else {
    const auto& dist = inst.distances();
    const auto& loads = parent.city_weights();
    std::int64_t carried = 0;
    for (std::size_t leg = 0; leg < dist.size(); ++leg) {
      carried += loads[leg];
      for (std::size_t i : flips) {
        if (inst.city_of()[i] == leg) carried += parent[i] ? -inst.items()[i].weight : inst.items()[i].weight;
      }
      time += dist[leg] / speed_for_load(inst, carried);
    }
  }
  const double b = static_cast<double>(parent.profit() + dp) - inst.renting_rate() * time;
  return {weight, {violation_for_weight(inst, weight), b}};
}

enum class Dominance { strong, weak, incomparable };

/**
 * Dominance of a over b in the (W, F) bi-objective: weak iff W(a) <= W(b)
 * and F(a) >= F(b); strong iff additionally one of the two is strict.
 */
[[nodiscard]] inline Dominance dominance(const Objectives& a, const Objectives& b) noexcept {
  if (a.weight > b.weight) return Dominance::incomparable;
  const auto cmp = compare_fitness(a.fitness, b.fitness);
  if (cmp < 0) return Dominance::incomparable;
  if (a.weight < b.weight || cmp > 0) return Dominance::strong;
  return Dominance::weak;
}

[[nodiscard]] inline Dominance dominance(const Instance& inst, const Solution& a, const Solution& b) {
  return dominance(objectives(inst, a), objectives(inst, b));
}

[[nodiscard]] inline bool weakly_dominates(const Objectives& a, const Objectives& b) noexcept {
  return dominance(a, b) != Dominance::incomparable;
}

[[nodiscard]] inline bool strongly_dominates(const Objectives& a, const Objectives& b) noexcept {
  return dominance(a, b) == Dominance::strong;
}

}  // namespace pwt

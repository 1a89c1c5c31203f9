#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pwt/evaluate.hpp"
#include "pwt/instance.hpp"
#include "pwt/solution.hpp"

namespace pwt {

/**
 * Load level below which adding item i (0-based) strictly improves the
 * benefit of a two-city solution:
 *
 *   vMax/nu - (w_i / 2) * (1 + sqrt(1 + 4 R d / (nu w_i p_i)))
 *
 * At exactly this load, adding the item leaves the benefit unchanged.
 */
[[nodiscard]] inline double add_threshold(const Instance& inst, std::size_t i) {
  require_two_city(inst, "add_threshold");
  const Item& it = inst.item(i);
  const double w = static_cast<double>(it.weight);
  const double p = static_cast<double>(it.profit);
  const double nu = inst.nu();
  const double rd = inst.renting_rate() * inst.distances().front();
  return inst.v_max() / nu - (w / 2.0) * (1.0 + std::sqrt(1.0 + 4.0 * rd / (nu * w * p)));
}

/// Removing item i strictly improves the benefit iff the load exceeds this value.
[[nodiscard]] inline double remove_threshold(const Instance& inst, std::size_t i) {
  return add_threshold(inst, i) + static_cast<double>(inst.item(i).weight);
}

struct Thresholds {
  std::vector<double> add;
  std::vector<double> remove;
};

[[nodiscard]] inline Thresholds thresholds(const Instance& inst) {
  Thresholds t;
  t.add.reserve(inst.size());
  t.remove.reserve(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    t.add.push_back(add_threshold(inst, i));
    t.remove.push_back(t.add.back() + static_cast<double>(inst.items()[i].weight));
  }
  return t;
}

/// Whether an integer load coincides with a real threshold, within the benefit tolerance.
[[nodiscard]] inline bool load_at_threshold(std::int64_t load, double threshold) noexcept {
  const double w = static_cast<double>(load);
  return std::abs(w - threshold) <= tolerance_band(w, threshold);
}

/// Weights of the prefix solutions s_0..s_n.
[[nodiscard]] inline std::vector<std::int64_t> prefix_weights(const Instance& inst) {
  std::vector<std::int64_t> w(inst.size() + 1, 0);
  for (std::size_t i = 0; i < inst.size(); ++i) w[i + 1] = w[i] + inst.items()[i].weight;
  return w;
}

[[nodiscard]] inline double prefix_benefit(const Instance& inst, std::size_t count) {
  return benefit(inst, Solution::prefix(inst, count));
}

/// Largest load for which the unclamped speed vMax - nu * W stays positive.
[[nodiscard]] inline double speed_limit_load(const Instance& inst) { return inst.v_max() / inst.nu(); }

/**
 * Two-city benefit without the vMin clamp, P - R d / (vMax - nu W). Agrees
 * with benefit() on feasible solutions; defined for W < vMax / nu.
 */
[[nodiscard]] inline double unclamped_benefit(const Instance& inst, std::int64_t weight, std::int64_t profit) {
  require_two_city(inst, "unclamped_benefit");
  const double speed = inst.v_max() - inst.nu() * static_cast<double>(weight);
  if (!(speed > 0.0)) throw std::domain_error("load stops the vehicle");
  return static_cast<double>(profit) - inst.renting_rate() * inst.distances().front() / speed;
}

struct OptResult {
  std::size_t k = 0;  ///< items in the optimal prefix s_k
  std::size_t o = 0;  ///< unconstrained optimal prefix length
  bool tie = false;   ///< s_k and s_{k+1} are both optimal
  double optimal_benefit = 0.0;
};

/**
 * Optimal solution of a correlated instance. The unconstrained optimum
 * is the prefix s_o, where o is the first i with W(s_i) >= addThreshold(i + 1)
 * (n if none). Prefix benefits increase strictly up to o and decrease
 * strictly after o + 1, with B(s_o) = B(s_{o+1}) exactly when the load of
 * s_o sits on the threshold of the next item. The capacity cuts the chain
 * at k = max{j <= o : W(s_j) <= C}.
 */
[[nodiscard]] inline OptResult optimal_prefix(const Instance& inst) {
  require_correlated(inst, "optimal_prefix");
  const std::size_t n = inst.size();
  const auto w = prefix_weights(inst);
  OptResult r;
  r.o = n;
  bool tie_at_o = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double next = add_threshold(inst, i);
    if (load_at_threshold(w[i], next)) {
      r.o = i;
      tie_at_o = true;
      break;
    }
    if (static_cast<double>(w[i]) > next) {
      r.o = i;
      break;
    }
  }
  r.k = r.o;
  while (r.k > 0 && w[r.k] > inst.capacity()) --r.k;
  r.tie = tie_at_o && r.k == r.o && r.o < n && w[r.o + 1] <= inst.capacity();
  r.optimal_benefit = prefix_benefit(inst, r.k);
  return r;
}

/// The Pareto set {s_0, ..., s_k} of a correlated instance.
[[nodiscard]] inline std::vector<Solution> pareto_front(const Instance& inst) {
  require_correlated(inst, "pareto_front");
  const auto opt = optimal_prefix(inst);
  std::vector<Solution> front;
  front.reserve(opt.k + 1);
  Solution s = Solution::empty(inst);
  front.push_back(s);
  for (std::size_t i = 0; i < opt.k; ++i) {
    s.flip(inst, i);
    front.push_back(s);
  }
  return front;
}

/**
 * Protected-prefix index of a feasible solution on a correlated instance:
 * the largest h <= k such that items 1..h are all selected and the load is
 * below removeThreshold(h). h = 0 always qualifies (virtual item e_0).
 *
 * Returned as a count of items, so h = k means the full optimal prefix.
 */
[[nodiscard]] inline std::size_t compute_h(const Instance& inst, const Solution& s, std::size_t k) {
  require_correlated(inst, "compute_h");
  if (s.weight() > inst.capacity()) throw std::invalid_argument("compute_h requires a feasible solution");
  std::size_t h = 0;
  const double load = static_cast<double>(s.weight());
  for (std::size_t i = 0; i < k && s[i]; ++i) {
    if (load < remove_threshold(inst, i)) h = i + 1;
  }
  return h;
}

[[nodiscard]] inline std::size_t compute_h(const Instance& inst, const Solution& s) {
  return compute_h(inst, s, optimal_prefix(inst).k);
}

/**
 * Moves the selected items of every run of identical (profit, weight)
 * items to the front of that run. W, P and B are unchanged; solutions
 * that differ only by a permutation of identical items map to the same
 * representative.
 */
[[nodiscard]] inline Solution canonicalize_identical(const Instance& inst, const Solution& s) {
  std::vector<std::uint8_t> bits = s.bits();
  const auto& items = inst.items();
  std::size_t begin = 0;
  while (begin < items.size()) {
    std::size_t end = begin + 1;
    while (end < items.size() && items[end] == items[begin]) ++end;
    std::size_t selected = 0;
    for (std::size_t i = begin; i < end; ++i) selected += bits[i];
    for (std::size_t i = begin; i < end; ++i) bits[i] = (i - begin) < selected ? 1 : 0;
    begin = end;
  }
  return Solution::from_bits(inst, bits);
}

}  // namespace pwt

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pwt {

struct Item {
  std::int64_t profit = 1;
  std::int64_t weight = 1;

  friend bool operator==(const Item&, const Item&) = default;
};

/**
 * A Packing While Travelling instance: m + 1 cities on a fixed path, items
 * located in the first m cities, a vehicle whose speed drops linearly with
 * its load from vMax (empty) to vMin (full at capacity C).
 *
 * Item and city indices are 0-based. Immutable after construction; the
 * constructor validates every field and throws std::invalid_argument.
 */
class Instance {
 public:
  Instance(std::vector<Item> items, std::vector<std::size_t> city_of, std::vector<double> distances,
           double renting_rate, double v_min, double v_max, std::int64_t capacity)
      : items_(std::move(items)),
        city_of_(std::move(city_of)),
        distances_(std::move(distances)),
        renting_rate_(renting_rate),
        v_min_(v_min),
        v_max_(v_max),
        capacity_(capacity) {
    validate();
    nu_ = (v_max_ - v_min_) / static_cast<double>(capacity_);
    classify();
  }

  /// Two-city instance: every item sits in the first city, one leg of length d.
  static Instance two_city(std::vector<Item> items, double distance, double renting_rate, double v_min,
                           double v_max, std::int64_t capacity) {
    std::vector<std::size_t> cities(items.size(), 0);
    return Instance(std::move(items), std::move(cities), {distance}, renting_rate, v_min, v_max, capacity);
  }

  [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }
  [[nodiscard]] std::size_t legs() const noexcept { return distances_.size(); }
  [[nodiscard]] const std::vector<Item>& items() const noexcept { return items_; }
  [[nodiscard]] const Item& item(std::size_t i) const { return items_.at(i); }
  [[nodiscard]] const std::vector<std::size_t>& city_of() const noexcept { return city_of_; }
  [[nodiscard]] std::size_t city_of(std::size_t i) const { return city_of_.at(i); }
  [[nodiscard]] const std::vector<double>& distances() const noexcept { return distances_; }
  [[nodiscard]] double renting_rate() const noexcept { return renting_rate_; }
  [[nodiscard]] double v_min() const noexcept { return v_min_; }
  [[nodiscard]] double v_max() const noexcept { return v_max_; }
  [[nodiscard]] std::int64_t capacity() const noexcept { return capacity_; }

  /// Speed loss per unit of carried weight, (vMax - vMin) / C.
  [[nodiscard]] double nu() const noexcept { return nu_; }

  /// One travel leg, items sorted by profit descending and weight ascending.
  [[nodiscard]] bool correlated() const noexcept { return correlated_; }
  [[nodiscard]] bool uniform() const noexcept { return uniform_; }
  [[nodiscard]] bool two_city() const noexcept { return distances_.size() == 1; }

  [[nodiscard]] std::int64_t total_item_weight() const noexcept { return total_weight_; }
  [[nodiscard]] std::int64_t max_profit() const noexcept { return max_profit_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.items_ == b.items_ && a.city_of_ == b.city_of_ && a.distances_ == b.distances_ &&
           a.renting_rate_ == b.renting_rate_ && a.v_min_ == b.v_min_ && a.v_max_ == b.v_max_ &&
           a.capacity_ == b.capacity_;
  }

 private:
  void validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("invalid instance: " + what); };
    if (distances_.empty()) fail("at least one travel leg is required");
    for (double d : distances_) {
      if (!(d > 0.0)) fail("distances must be positive");
    }
    if (city_of_.size() != items_.size()) fail("city assignment size differs from item count");
    for (std::size_t c : city_of_) {
      if (c >= distances_.size()) fail("item city index out of range");
    }
    for (const auto& it : items_) {
      if (it.profit < 1 || it.weight < 1) fail("profits and weights must be positive integers");
    }
    if (!(renting_rate_ >= 0.0)) fail("renting rate must be non-negative");
    if (!(v_min_ > 0.0) || !(v_max_ > v_min_)) fail("velocities must satisfy 0 < vMin < vMax");
    if (capacity_ < 1) fail("capacity must be positive");
  }

  void classify() {
    total_weight_ = 0;
    max_profit_ = 0;
    for (const auto& it : items_) {
      total_weight_ += it.weight;
      max_profit_ = std::max(max_profit_, it.profit);
    }
    uniform_ = std::all_of(items_.begin(), items_.end(), [](const Item& it) { return it.weight == 1; });
    correlated_ = distances_.size() == 1;
    for (std::size_t i = 1; correlated_ && i < items_.size(); ++i) {
      correlated_ = items_[i - 1].profit >= items_[i].profit && items_[i - 1].weight <= items_[i].weight;
    }
  }

  std::vector<Item> items_;
  std::vector<std::size_t> city_of_;
  std::vector<double> distances_;
  double renting_rate_;
  double v_min_;
  double v_max_;
  std::int64_t capacity_;
  double nu_ = 0.0;
  bool correlated_ = false;
  bool uniform_ = false;
  std::int64_t total_weight_ = 0;
  std::int64_t max_profit_ = 0;
};

/// True iff no two items share the same (profit, weight) pair.
[[nodiscard]] inline bool has_distinct_items(const Instance& inst) {
  auto items = inst.items();
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return std::pair(a.profit, a.weight) < std::pair(b.profit, b.weight); });
  return std::adjacent_find(items.begin(), items.end()) == items.end();
}

/// Correlated with pairwise distinct items: thresholds are then strictly ordered.
[[nodiscard]] inline bool strictly_correlated(const Instance& inst) {
  return inst.correlated() && has_distinct_items(inst);
}

inline void require_two_city(const Instance& inst, const char* what) {
  if (!inst.two_city()) throw std::invalid_argument(std::string(what) + " requires a two-city instance");
}

inline void require_correlated(const Instance& inst, const char* what) {
  if (!inst.correlated()) throw std::invalid_argument(std::string(what) + " requires a correlated instance");
}

}  // namespace pwt

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwt/instance.hpp"

namespace pwt {

/**
 * Selection bit vector with cached aggregates: total weight, total profit,
 * number of selected items, and the selected weight per city.
 *
 * The caches are maintained by flip(); they always equal a full rescan
 * of the bits against the instance the solution was built for.
 */
class Solution {
 public:
  Solution() = default;

  static Solution empty(const Instance& inst) {
    Solution s;
    s.bits_.assign(inst.size(), 0);
    s.city_weight_.assign(inst.legs(), 0);
    return s;
  }

  static Solution from_bits(const Instance& inst, std::span<const std::uint8_t> bits) {
    if (bits.size() != inst.size()) {
      throw std::invalid_argument("solution length " + std::to_string(bits.size()) + " differs from n = " +
                                  std::to_string(inst.size()));
    }
    Solution s = empty(inst);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != 0) s.flip(inst, i);
    }
    return s;
  }

  static Solution from_string(const Instance& inst, const std::string& text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') throw std::invalid_argument("solution string must contain only 0 and 1");
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return from_bits(inst, bits);
  }

  /// The first `count` items selected, nothing else.
  static Solution prefix(const Instance& inst, std::size_t count) {
    Solution s = empty(inst);
    for (std::size_t i = 0; i < std::min(count, inst.size()); ++i) s.flip(inst, i);
    return s;
  }

  void flip(const Instance& inst, std::size_t i) {
    const Item& it = inst.items()[i];
    const std::size_t city = inst.city_of()[i];
    if (bits_[i] != 0) {
      bits_[i] = 0;
      weight_ -= it.weight;
      profit_ -= it.profit;
      city_weight_[city] -= it.weight;
      --ones_;
    } else {
      bits_[i] = 1;
      weight_ += it.weight;
      profit_ += it.profit;
      city_weight_[city] += it.weight;
      ++ones_;
    }
  }

  void flip_all(const Instance& inst, std::span<const std::size_t> positions) {
    for (std::size_t i : positions) flip(inst, i);
  }

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] bool test(std::size_t i) const { return bits_.at(i) != 0; }
  [[nodiscard]] bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  [[nodiscard]] const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  [[nodiscard]] std::int64_t weight() const noexcept { return weight_; }
  [[nodiscard]] std::int64_t profit() const noexcept { return profit_; }
  [[nodiscard]] std::size_t ones() const noexcept { return ones_; }
  [[nodiscard]] const std::vector<std::int64_t>& city_weights() const noexcept { return city_weight_; }

  [[nodiscard]] std::string to_string() const {
    std::string out(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] != 0) out[i] = '1';
    }
    return out;
  }

  /// Lexicographic order on the bit vector, x_1 most significant.
  [[nodiscard]] bool lex_less(const Solution& other) const noexcept { return bits_ < other.bits_; }

  friend bool operator==(const Solution& a, const Solution& b) noexcept { return a.bits_ == b.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::vector<std::int64_t> city_weight_;
  std::int64_t weight_ = 0;
  std::int64_t profit_ = 0;
  std::size_t ones_ = 0;
};

[[nodiscard]] inline std::size_t hamming_distance(const Solution& a, const Solution& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

}  // namespace pwt

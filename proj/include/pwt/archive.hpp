#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "pwt/evaluate.hpp"
#include "pwt/instance.hpp"
#include "pwt/rng.hpp"
#include "pwt/solution.hpp"

namespace pwt {

/**
 * Solution plus position lists of its one-bits and zero-bits, so that a
 * uniformly random one-bit or zero-bit is drawn in O(1).
 */
class IndexedSolution {
 public:
  IndexedSolution() = default;

  explicit IndexedSolution(Solution s) : sol_(std::move(s)), slot_(sol_.size()) {
    ones_.reserve(sol_.size());
    zeros_.reserve(sol_.size());
    for (std::size_t i = 0; i < sol_.size(); ++i) {
      auto& list = sol_[i] ? ones_ : zeros_;
      slot_[i] = list.size();
      list.push_back(i);
    }
  }

  void flip(const Instance& inst, std::size_t i) {
    auto& from = sol_[i] ? ones_ : zeros_;
    auto& to = sol_[i] ? zeros_ : ones_;
    const std::size_t at = slot_[i];
    from[at] = from.back();
    slot_[from[at]] = at;
    from.pop_back();
    slot_[i] = to.size();
    to.push_back(i);
    sol_.flip(inst, i);
  }

  void flip_all(const Instance& inst, std::span<const std::size_t> positions) {
    for (std::size_t i : positions) flip(inst, i);
  }

  [[nodiscard]] const Solution& solution() const noexcept { return sol_; }
  [[nodiscard]] std::size_t size() const noexcept { return sol_.size(); }
  [[nodiscard]] std::size_t ones() const noexcept { return ones_.size(); }
  [[nodiscard]] std::size_t random_one(SplitMix64& rng) const { return ones_[rng.below(ones_.size())]; }
  [[nodiscard]] std::size_t random_zero(SplitMix64& rng) const { return zeros_[rng.below(zeros_.size())]; }

 private:
  Solution sol_;
  std::vector<std::size_t> ones_;
  std::vector<std::size_t> zeros_;
  std::vector<std::size_t> slot_;
};

/**
 * Mutually non-dominated population of the (W, F) bi-objective, bucketed
 * by the number of selected items.
 *
 * Members are keyed by weight: two members with equal weight would weakly
 * dominate one another, so at most one survives per weight value, and F
 * strictly increases with W along the key order.
 */
class ParetoArchive {
 public:
  struct Entry {
    IndexedSolution sol;
    Objectives obj;
  };

  explicit ParetoArchive(std::size_t n) : buckets_(n + 1), slot_(n + 1, kNone) {}

  [[nodiscard]] std::size_t size() const noexcept { return by_weight_.size(); }
  [[nodiscard]] bool empty() const noexcept { return by_weight_.empty(); }
  [[nodiscard]] std::size_t bucket_count() const noexcept { return nonempty_.size(); }
  [[nodiscard]] const std::map<std::int64_t, Entry>& entries() const noexcept { return by_weight_; }

  /// Some member strongly dominates `obj`.
  [[nodiscard]] bool dominated(const Objectives& obj) const {
    auto it = by_weight_.upper_bound(obj.weight);
    while (it != by_weight_.begin()) {
      --it;
      const Objectives& z = it->second.obj;
      if (strongly_dominates(z, obj)) return true;
      // F decreases towards lighter members; once strictly below, none can dominate.
      if (compare_fitness(z.fitness, obj.fitness) < 0) break;
    }
    return false;
  }

  /**
   * Inserts the entry unless it is strongly dominated, evicting every
   * member it weakly dominates (including equal objective points).
   * Returns whether the entry was inserted.
   */
  bool insert(Entry entry) {
    if (dominated(entry.obj)) return false;
    auto it = by_weight_.lower_bound(entry.obj.weight);
    while (it != by_weight_.end() && weakly_dominates(entry.obj, it->second.obj)) {
      unbucket(it->second);
      it = by_weight_.erase(it);
    }
    bucket(entry);
    by_weight_.emplace_hint(it, entry.obj.weight, std::move(entry));
    return true;
  }

  /**
   * Uniform bucket j among non-empty buckets, then the member of bucket j
   * with the best F; ties prefer lower W, then the lexicographically
   * smaller bit vector.
   */
  [[nodiscard]] const Entry& select(SplitMix64& rng) const {
    const std::size_t j = nonempty_[rng.below(nonempty_.size())];
    const Entry* best = nullptr;
    for (std::int64_t w : buckets_[j]) {
      const Entry& e = by_weight_.at(w);
      if (best == nullptr || better_parent(e, *best)) best = &e;
    }
    return *best;
  }

  /// Member with the best F, i.e. the heaviest member.
  [[nodiscard]] const Entry& best() const { return std::prev(by_weight_.end())->second; }

  /// Mutual non-domination and bucket consistency, checked exhaustively.
  [[nodiscard]] bool valid() const {
    std::size_t bucketed = 0;
    for (std::size_t j = 0; j < buckets_.size(); ++j) {
      bucketed += buckets_[j].size();
      for (std::int64_t w : buckets_[j]) {
        auto it = by_weight_.find(w);
        if (it == by_weight_.end() || it->second.sol.ones() != j) return false;
      }
      if (buckets_[j].empty() != (slot_[j] == kNone)) return false;
    }
    if (bucketed != by_weight_.size()) return false;
    for (const auto& [wa, a] : by_weight_) {
      if (wa != a.obj.weight) return false;
      for (const auto& [wb, b] : by_weight_) {
        if (wa != wb && strongly_dominates(a.obj, b.obj)) return false;
      }
    }
    return true;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  static bool better_parent(const Entry& a, const Entry& b) {
    const auto cmp = compare_fitness(a.obj.fitness, b.obj.fitness);
    if (cmp != 0) return cmp > 0;
    if (a.obj.weight != b.obj.weight) return a.obj.weight < b.obj.weight;
    return a.sol.solution().lex_less(b.sol.solution());
  }

  void bucket(const Entry& e) {
    const std::size_t j = e.sol.ones();
    if (buckets_[j].empty()) {
      slot_[j] = nonempty_.size();
      nonempty_.push_back(j);
    }
    buckets_[j].push_back(e.obj.weight);
  }

  void unbucket(const Entry& e) {
    const std::size_t j = e.sol.ones();
    auto& b = buckets_[j];
    b.erase(std::find(b.begin(), b.end(), e.obj.weight));
    if (b.empty()) {
      const std::size_t at = slot_[j];
      nonempty_[at] = nonempty_.back();
      slot_[nonempty_[at]] = at;
      nonempty_.pop_back();
      slot_[j] = kNone;
    }
  }

  std::map<std::int64_t, Entry> by_weight_;
  std::vector<std::vector<std::int64_t>> buckets_;
  std::vector<std::size_t> nonempty_;
  std::vector<std::size_t> slot_;
};

}  // namespace pwt

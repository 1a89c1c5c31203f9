#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "pwt/archive.hpp"
#include "pwt/evaluate.hpp"
#include "pwt/instance.hpp"
#include "pwt/rng.hpp"
#include "pwt/solution.hpp"

namespace pwt {

enum class Algorithm { rls_swap, opo_ea, gsemo, semo, semo_swap };

inline constexpr std::array kAllAlgorithms = {Algorithm::rls_swap, Algorithm::opo_ea, Algorithm::gsemo,
                                              Algorithm::semo, Algorithm::semo_swap};

[[nodiscard]] constexpr std::string_view algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::rls_swap: return "rls_swap";
    case Algorithm::opo_ea: return "opo_ea";
    case Algorithm::gsemo: return "gsemo";
    case Algorithm::semo: return "semo";
    case Algorithm::semo_swap: return "semo_swap";
  }
  return "?";
}

[[nodiscard]] inline Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_name(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

[[nodiscard]] constexpr bool multi_objective(Algorithm a) noexcept {
  return a == Algorithm::gsemo || a == Algorithm::semo || a == Algorithm::semo_swap;
}

enum class InitMode { zero, uniform_random };
enum class EvalCounting { all_iterations, effective_only };

struct RunConfig {
  std::uint64_t max_evaluations = 1'000'000;
  std::optional<double> target_benefit;  ///< stop once the best feasible B reaches it
  std::uint64_t seed = 0;
  InitMode init = InitMode::uniform_random;
  EvalCounting counting = EvalCounting::effective_only;
  std::uint64_t trace_stride = 1000;  ///< record every k-th generation besides improvements

  void validate() const {
    if (max_evaluations < 1) throw std::invalid_argument("max_evaluations must be at least 1");
    if (trace_stride < 1) throw std::invalid_argument("trace_stride must be at least 1");
  }
};

struct TracePoint {
  std::uint64_t evaluations = 0;
  double best_benefit = 0.0;
  std::int64_t best_weight = 0;
  bool best_feasible = false;
  std::size_t archive_size = 1;
};

struct RunResult {
  Solution best_solution;
  Fitness best_fitness;
  std::uint64_t evaluations = 0;
  std::uint64_t raw_iterations = 0;
  bool hit_target = false;
  std::vector<TracePoint> trace;
  std::vector<Solution> archive;  ///< final population (multi-objective algorithms only)
};

/// One evaluated generation as seen by an observer.
struct Step {
  const Solution& parent;
  const Solution& offspring;
  bool accepted;
};

/// Observer that ignores every step.
struct NoObserver {
  void operator()(const Step&) const noexcept {}
};

namespace detail {

/// Standard bit mutation: each position flips independently with probability 1/n.
inline void standard_bit_mutation(std::size_t n, SplitMix64& rng, std::vector<std::size_t>& flips) {
  flips.clear();
  const double p = 1.0 / static_cast<double>(n);
  std::uint64_t pos = rng.geometric(p);
  while (pos < n) {
    flips.push_back(static_cast<std::size_t>(pos));
    const std::uint64_t gap = rng.geometric(p);
    if (gap >= n) break;
    pos += 1 + gap;
  }
}

inline void one_bit_mutation(std::size_t n, SplitMix64& rng, std::vector<std::size_t>& flips) {
  flips.clear();
  flips.push_back(static_cast<std::size_t>(rng.below(n)));
}

/// One uniform bit if the parent is all-zero or all-one or a fair coin says so,
/// otherwise one uniform one-bit together with one uniform zero-bit.
inline void swap_mutation(const IndexedSolution& parent, SplitMix64& rng, std::vector<std::size_t>& flips) {
  const std::size_t n = parent.size();
  const double coin = rng.uniform01();
  flips.clear();
  if (parent.ones() == 0 || parent.ones() == n || coin < 0.5) {
    flips.push_back(static_cast<std::size_t>(rng.below(n)));
  } else {
    flips.push_back(parent.random_one(rng));
    flips.push_back(parent.random_zero(rng));
  }
}

inline Solution initial_solution(const Instance& inst, InitMode mode, SplitMix64& rng) {
  Solution s = Solution::empty(inst);
  if (mode == InitMode::uniform_random) {
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (rng.below(2) == 1) s.flip(inst, i);
    }
  }
  return s;
}

inline bool reaches_target(const Fitness& f, const std::optional<double>& target) {
  return target && f.feasible() && compare_benefit(f.benefit, *target) >= 0;
}

/// Bookkeeping shared by all algorithms: counters, best-so-far, trace, stop rule.
class RunState {
 public:
  RunState(const RunConfig& cfg, const Solution& init, const Fitness& f) : cfg_(cfg) {
    result_.best_solution = init;
    result_.best_fitness = f;
    result_.hit_target = reaches_target(f, cfg.target_benefit);
    record(1);
  }

  [[nodiscard]] bool running() const noexcept {
    return !result_.hit_target && result_.evaluations < cfg_.max_evaluations;
  }

  /// Counts one generation; returns whether the offspring needs evaluating.
  bool count_generation(bool flipped) noexcept {
    ++result_.raw_iterations;
    if (flipped || cfg_.counting == EvalCounting::all_iterations) ++result_.evaluations;
    return flipped;
  }

  void offer_best(const Solution& s, const Fitness& f, std::size_t archive_size) {
    const bool improved = compare_fitness(f, result_.best_fitness) > 0;
    if (improved) {
      result_.best_solution = s;
      result_.best_fitness = f;
      result_.hit_target = reaches_target(f, cfg_.target_benefit);
    }
    if (improved || archive_size != last_archive_size_) record(archive_size);
  }

  void end_generation(std::size_t archive_size) {
    if (result_.raw_iterations % cfg_.trace_stride == 0 &&
        (result_.trace.empty() || result_.trace.back().evaluations != result_.evaluations)) {
      record(archive_size);
    }
  }

  RunResult finish(std::size_t archive_size) {
    if (result_.trace.back().evaluations != result_.evaluations) record(archive_size);
    return std::move(result_);
  }

  RunResult& result() noexcept { return result_; }

 private:
  void record(std::size_t archive_size) {
    last_archive_size_ = archive_size;
    TracePoint p{result_.evaluations, result_.best_fitness.benefit, result_.best_solution.weight(),
                 result_.best_fitness.feasible(), archive_size};
    if (!result_.trace.empty() && result_.trace.back().evaluations == p.evaluations) {
      result_.trace.back() = p;
    } else {
      result_.trace.push_back(p);
    }
  }

  const RunConfig& cfg_;
  RunResult result_;
  std::size_t last_archive_size_ = 1;
};

enum class Mutation { standard_bit, one_bit, swap };

/// (1+1) scheme shared by RLS_swap and the (1+1) EA.
template <class Observer>
RunResult run_single(const Instance& inst, const RunConfig& cfg, Mutation mutation, Observer&& observe) {
  cfg.validate();
  if (inst.size() == 0) throw std::invalid_argument("instance has no items");
  SplitMix64 rng(cfg.seed);
  IndexedSolution current(initial_solution(inst, cfg.init, rng));
  Fitness current_fit = fitness(inst, current.solution());
  RunState state(cfg, current.solution(), current_fit);
  std::vector<std::size_t> flips;
  Solution offspring;
  while (state.running()) {
    if (mutation == Mutation::swap) {
      swap_mutation(current, rng, flips);
    } else {
      standard_bit_mutation(inst.size(), rng, flips);
    }
    if (!state.count_generation(!flips.empty())) {
      state.end_generation(1);
      continue;
    }
    const Objectives next = objectives_after_flips(inst, current.solution(), flips);
    const bool accept = at_least_as_good(next.fitness, current_fit);
    if constexpr (!std::is_same_v<std::decay_t<Observer>, NoObserver>) {
      offspring = current.solution();
      offspring.flip_all(inst, flips);
      observe(Step{current.solution(), offspring, accept});
    }
    if (accept) {
      current.flip_all(inst, flips);
      current_fit = next.fitness;
      state.offer_best(current.solution(), current_fit, 1);
    }
    state.end_generation(1);
  }
  return state.finish(1);
}

/// GSEMO scheme with a pluggable mutation; SEMO and SEMO_swap differ only there.
template <class Observer>
RunResult run_multi(const Instance& inst, const RunConfig& cfg, Mutation mutation, Observer&& observe) {
  cfg.validate();
  if (inst.size() == 0) throw std::invalid_argument("instance has no items");
  SplitMix64 rng(cfg.seed);
  const Solution init = initial_solution(inst, cfg.init, rng);
  ParetoArchive archive(inst.size());
  archive.insert({IndexedSolution(init), objectives(inst, init)});
  RunState state(cfg, init, archive.best().obj.fitness);
  std::vector<std::size_t> flips;
  Solution offspring;
  while (state.running()) {
    const ParetoArchive::Entry& parent = archive.select(rng);
    switch (mutation) {
      case Mutation::standard_bit: standard_bit_mutation(inst.size(), rng, flips); break;
      case Mutation::one_bit: one_bit_mutation(inst.size(), rng, flips); break;
      case Mutation::swap: swap_mutation(parent.sol, rng, flips); break;
    }
    if (!state.count_generation(!flips.empty())) {
      state.end_generation(archive.size());
      continue;
    }
    const Objectives next = objectives_after_flips(inst, parent.sol.solution(), flips);
    const bool accept = !archive.dominated(next);
    if constexpr (!std::is_same_v<std::decay_t<Observer>, NoObserver>) {
      offspring = parent.sol.solution();
      offspring.flip_all(inst, flips);
      observe(Step{parent.sol.solution(), offspring, accept});
    }
    if (accept) {
      IndexedSolution child = parent.sol;
      child.flip_all(inst, flips);
      archive.insert({std::move(child), next});
      const auto& top = archive.best();
      state.offer_best(top.sol.solution(), top.obj.fitness, archive.size());
    }
    state.end_generation(archive.size());
  }
  RunResult result = state.finish(archive.size());
  result.archive.reserve(archive.size());
  for (const auto& [w, e] : archive.entries()) result.archive.push_back(e.sol.solution());
  return result;
}

}  // namespace detail

template <class Observer = NoObserver>
RunResult run_rls_swap(const Instance& inst, const RunConfig& cfg, Observer&& observe = {}) {
  return detail::run_single(inst, cfg, detail::Mutation::swap, std::forward<Observer>(observe));
}

template <class Observer = NoObserver>
RunResult run_one_plus_one_ea(const Instance& inst, const RunConfig& cfg, Observer&& observe = {}) {
  return detail::run_single(inst, cfg, detail::Mutation::standard_bit, std::forward<Observer>(observe));
}

template <class Observer = NoObserver>
RunResult run_gsemo(const Instance& inst, const RunConfig& cfg, Observer&& observe = {}) {
  return detail::run_multi(inst, cfg, detail::Mutation::standard_bit, std::forward<Observer>(observe));
}

template <class Observer = NoObserver>
RunResult run_semo(const Instance& inst, const RunConfig& cfg, Observer&& observe = {}) {
  return detail::run_multi(inst, cfg, detail::Mutation::one_bit, std::forward<Observer>(observe));
}

template <class Observer = NoObserver>
RunResult run_semo_swap(const Instance& inst, const RunConfig& cfg, Observer&& observe = {}) {
  return detail::run_multi(inst, cfg, detail::Mutation::swap, std::forward<Observer>(observe));
}

template <class Observer = NoObserver>
RunResult run_algorithm(Algorithm a, const Instance& inst, const RunConfig& cfg, Observer&& observe = {}) {
  switch (a) {
    case Algorithm::rls_swap: return run_rls_swap(inst, cfg, std::forward<Observer>(observe));
    case Algorithm::opo_ea: return run_one_plus_one_ea(inst, cfg, std::forward<Observer>(observe));
    case Algorithm::gsemo: return run_gsemo(inst, cfg, std::forward<Observer>(observe));
    case Algorithm::semo: return run_semo(inst, cfg, std::forward<Observer>(observe));
    case Algorithm::semo_swap: return run_semo_swap(inst, cfg, std::forward<Observer>(observe));
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace pwt

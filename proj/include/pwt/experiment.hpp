#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <charconv>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pwt/algorithms.hpp"
#include "pwt/evaluate.hpp"
#include "pwt/generate.hpp"
#include "pwt/instance.hpp"
#include "pwt/rng.hpp"
#include "pwt/theory.hpp"

namespace pwt {

/// Stream tag for generated benchmark instances.
inline constexpr std::uint64_t kInstanceStreamTag = 0x1A57A9CEULL;

/**
 * Runs body(i) for i in [0, count) on `workers` threads. Results must be
 * written to per-index slots; the first exception thrown is rethrown.
 */
inline void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

[[nodiscard]] inline std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t n, std::size_t index) {
  return derive_seed(base_seed, {kInstanceStreamTag, n, index});
}

[[nodiscard]] inline std::uint64_t run_seed(std::uint64_t base_seed, std::size_t instance_id, Algorithm a,
                                            std::size_t repetition) {
  return derive_seed(base_seed, {instance_id, static_cast<std::uint64_t>(a), repetition});
}

/// `count` benchmark instances of size n. Uniform instances share profits with the correlated ones.
[[nodiscard]] inline std::vector<Instance> benchmark_instances(std::size_t n, std::size_t count,
                                                               std::uint64_t base_seed, bool uniform,
                                                               GenParams params = {}) {
  std::vector<Instance> out;
  out.reserve(count);
  params.n = n;
  for (std::size_t i = 0; i < count; ++i) {
    params.seed = instance_seed(base_seed, n, i);
    out.push_back(uniform ? gen_uniform(params) : gen_correlated(params));
  }
  return out;
}

struct ExperimentSpec {
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::size_t repetitions = 30;  ///< instances per size (one run per instance and algorithm)
  std::uint64_t budget = 10'000'000;
  std::vector<std::size_t> sizes{100, 200, 500, 1000, 2000};
  std::size_t n = 300;
  bool uniform = false;
  std::uint64_t base_seed = 1;
  std::size_t workers = 1;
  EvalCounting counting = EvalCounting::effective_only;
  InitMode init = InitMode::zero;

  void validate() const {
    if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
    if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
    if (budget < 1) throw std::invalid_argument("budget must be at least 1");
    if (sizes.empty()) throw std::invalid_argument("sizes must not be empty");
    for (std::size_t i = 1; i < sizes.size(); ++i) {
      if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("sizes must be strictly increasing");
    }
    if (sizes.front() < 2) throw std::invalid_argument("sizes must be at least 2");
  }
};

/// 0, then round(1.05^i) deduplicated, up to and including `budget`.
[[nodiscard]] inline std::vector<std::uint64_t> evaluation_grid(std::uint64_t budget) {
  std::vector<std::uint64_t> grid{0};
  double x = 1.0;
  while (true) {
    const auto g = static_cast<std::uint64_t>(std::llround(x));
    if (g >= budget) break;
    if (g > grid.back()) grid.push_back(g);
    x *= 1.05;
  }
  grid.push_back(budget);
  return grid;
}

/// Benefit mapped to [0, 1] between the empty solution (0) and the optimum (1).
[[nodiscard]] inline double normalized_benefit(double b, double empty_benefit, double optimum) {
  const double span = optimum - empty_benefit;
  if (!(std::abs(span) > tolerance_band(optimum, empty_benefit))) return 1.0;
  return std::clamp((b - empty_benefit) / span, 0.0, 1.0);
}

/// Best-so-far normalized benefit of one run, sampled at each grid point.
[[nodiscard]] inline std::vector<double> sample_trace(const std::vector<TracePoint>& trace,
                                                      const std::vector<std::uint64_t>& grid, double empty_benefit,
                                                      double optimum) {
  std::vector<double> out(grid.size(), 0.0);
  std::size_t t = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    while (t + 1 < trace.size() && trace[t + 1].evaluations <= grid[g]) ++t;
    const auto& p = trace[t];
    out[g] = p.best_feasible ? normalized_benefit(p.best_benefit, empty_benefit, optimum) : 0.0;
  }
  return out;
}

struct ConvergenceRow {
  Algorithm algorithm;
  std::uint64_t evaluations;
  double mean_normalized_benefit;
  std::size_t repetitions;
};

/**
 * Runs every algorithm once per instance from the empty solution until
 * the optimum or the budget, and averages the normalized best-so-far
 * benefit over instances on a geometric evaluation grid.
 */
[[nodiscard]] inline std::vector<ConvergenceRow> convergence_experiment(const std::vector<Instance>& instances,
                                                                        const ExperimentSpec& spec) {
  spec.validate();
  if (instances.empty()) throw std::invalid_argument("convergence experiment needs instances");
  std::vector<OptResult> optima;
  for (const auto& inst : instances) optima.push_back(optimal_prefix(inst));

  const auto grid = evaluation_grid(spec.budget);
  const std::size_t runs = spec.algorithms.size() * instances.size();
  std::vector<std::vector<double>> sampled(runs);
  parallel_for(runs, spec.workers, [&](std::size_t task) {
    const std::size_t a = task / instances.size();
    const std::size_t i = task % instances.size();
    const Algorithm alg = spec.algorithms[a];
    RunConfig cfg;
    cfg.max_evaluations = spec.budget;
    cfg.target_benefit = optima[i].optimal_benefit;
    cfg.seed = run_seed(spec.base_seed, i, alg, 0);
    cfg.init = spec.init;
    cfg.counting = spec.counting;
    cfg.trace_stride = std::max<std::uint64_t>(1, spec.budget / 1000);
    const RunResult r = run_algorithm(alg, instances[i], cfg);
    const double empty = benefit(instances[i], Solution::empty(instances[i]));
    sampled[task] = sample_trace(r.trace, grid, empty, optima[i].optimal_benefit);
  });

  std::vector<ConvergenceRow> rows;
  rows.reserve(spec.algorithms.size() * grid.size());
  for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      double sum = 0.0;
      for (std::size_t i = 0; i < instances.size(); ++i) sum += sampled[a * instances.size() + i][g];
      rows.push_back({spec.algorithms[a], grid[g], sum / static_cast<double>(instances.size()), instances.size()});
    }
  }
  return rows;
}

[[nodiscard]] inline std::vector<ConvergenceRow> convergence_experiment(const ExperimentSpec& spec) {
  spec.validate();
  return convergence_experiment(benchmark_instances(spec.n, spec.repetitions, spec.base_seed, spec.uniform), spec);
}

struct ScalingRow {
  Algorithm algorithm;
  std::size_t n;
  double mean_evals;
  double median_evals;
  double stddev;
  std::size_t censored;
  double ref_n2;
  double ref_nlogn;
};

/// Evaluation cap for scaling runs; runs hitting it are reported as censored.
[[nodiscard]] inline std::uint64_t scaling_ceiling(std::size_t n) {
  return 100 * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
}

struct RunStats {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
};

/// Mean, median and sample standard deviation.
[[nodiscard]] inline RunStats describe(std::vector<double> xs) {
  RunStats s;
  if (xs.empty()) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  s.median = xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

/**
 * Evaluations to reach the optimum on fresh correlated instances of each
 * size. Censored runs enter the statistics at the ceiling value. The
 * reference columns n^2 and n log n are scaled to the algorithm's mean at
 * the smallest size.
 */
[[nodiscard]] inline std::vector<ScalingRow> scaling_experiment(const ExperimentSpec& spec) {
  spec.validate();
  struct Task {
    std::size_t size_index;
    std::size_t instance;
    std::size_t algorithm;
  };
  std::vector<std::vector<Instance>> instances;
  std::vector<std::vector<OptResult>> optima;
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    instances.push_back(benchmark_instances(spec.sizes[s], spec.repetitions, spec.base_seed, false));
    optima.emplace_back();
    for (const auto& inst : instances.back()) optima.back().push_back(optimal_prefix(inst));
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
      for (std::size_t i = 0; i < spec.repetitions; ++i) tasks.push_back({s, i, a});
    }
  }
  // Largest sizes first keeps the pool busy until the end.
  std::vector<std::size_t> order(tasks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return tasks[x].size_index > tasks[y].size_index; });

  std::vector<std::uint64_t> evals(tasks.size());
  std::vector<std::uint8_t> censored(tasks.size());
  parallel_for(tasks.size(), spec.workers, [&](std::size_t slot) {
    const std::size_t t = order[slot];
    const Task& task = tasks[t];
    const std::size_t n = spec.sizes[task.size_index];
    const Algorithm alg = spec.algorithms[task.algorithm];
    RunConfig cfg;
    cfg.max_evaluations = scaling_ceiling(n);
    cfg.target_benefit = optima[task.size_index][task.instance].optimal_benefit;
    cfg.seed = run_seed(spec.base_seed, n * 1'000'003ULL + task.instance, alg, 0);
    cfg.init = spec.init;
    cfg.counting = spec.counting;
    cfg.trace_stride = cfg.max_evaluations;
    const RunResult r = run_algorithm(alg, instances[task.size_index][task.instance], cfg);
    evals[t] = r.evaluations;
    censored[t] = r.hit_target ? 0 : 1;
  });

  std::vector<ScalingRow> rows;
  std::size_t t = 0;
  std::vector<std::vector<RunStats>> stats(spec.sizes.size(), std::vector<RunStats>(spec.algorithms.size()));
  std::vector<std::vector<std::size_t>> censored_counts(spec.sizes.size(),
                                                        std::vector<std::size_t>(spec.algorithms.size()));
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
      std::vector<double> xs;
      for (std::size_t i = 0; i < spec.repetitions; ++i, ++t) {
        xs.push_back(static_cast<double>(evals[t]));
        censored_counts[s][a] += censored[t];
      }
      stats[s][a] = describe(std::move(xs));
    }
  }
  const double n0 = static_cast<double>(spec.sizes.front());
  for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
    const double base = stats[0][a].mean;
    for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
      const double n = static_cast<double>(spec.sizes[s]);
      rows.push_back({spec.algorithms[a], spec.sizes[s], stats[s][a].mean, stats[s][a].median, stats[s][a].stddev,
                      censored_counts[s][a], base * (n / n0) * (n / n0),
                      base * (n * std::log(n)) / (n0 * std::log(n0))});
    }
  }
  return rows;
}

/// Least-squares slope of log(mean evaluations) against log(n).
[[nodiscard]] inline double log_log_slope(const std::vector<ScalingRow>& rows, Algorithm a) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : rows) {
    if (r.algorithm != a) continue;
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(std::log(r.mean_evals));
  }
  if (xs.size() < 2) throw std::invalid_argument("slope needs at least two sizes");
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

/// Shortest decimal that round-trips, so CSVs are byte-stable.
[[nodiscard]] inline std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "algorithm,evaluations,meanNormalizedBenefit,repetitions\n";
  for (const auto& r : rows) {
    out << algorithm_name(r.algorithm) << ',' << r.evaluations << ',' << format_real(r.mean_normalized_benefit) << ','
        << r.repetitions << '\n';
  }
}

inline void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows) {
  out << "algorithm,n,meanEvals,medianEvals,stddev,censoredCount,refN2,refNLogN\n";
  for (const auto& r : rows) {
    out << algorithm_name(r.algorithm) << ',' << r.n << ',' << format_real(r.mean_evals) << ','
        << format_real(r.median_evals) << ',' << format_real(r.stddev) << ',' << r.censored << ','
        << format_real(r.ref_n2) << ',' << format_real(r.ref_nlogn) << '\n';
  }
}

}  // namespace pwt

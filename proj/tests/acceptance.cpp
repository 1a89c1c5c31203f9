// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Also leaves fig1_convergence.csv and fig2_scaling.csv in the working directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pwt/pwt.hpp"

using namespace pwt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::size_t workers() { return std::max<std::size_t>(8, std::thread::hardware_concurrency()); }

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  SplitMix64 rng(derive_seed(2024, {1}));
  std::size_t mismatches = 0;
  double worst = 0.0;
  for (std::size_t t = 0; t < 200; ++t) {
    // Half benchmark constants with a random capacity, half randomised constants.
    Instance inst = sample_strict_instance(rng, 4, 16);
    if (t % 2 == 0) {
      GenParams p;
      p.n = 4 + rng.below(13);
      p.seed = rng.next();
      p.capacity = rng.between(1, static_cast<std::int64_t>(p.n) * 600);
      inst = gen_correlated(p);
    }
    const double a = optimal_prefix(inst).optimal_benefit;
    const double b = brute_force_optimum(inst).benefit;
    const double rel = std::abs(a - b) / std::max(1.0, std::abs(b));
    worst = std::max(worst, rel);
    if (rel > 1e-9) ++mismatches;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60.0,
          fmt("200 instances, %zu mismatches, max rel diff %.3g, %.1fs", mismatches, worst, secs)};
}

Outcome sign_equivalence() {
  SplitMix64 rng(derive_seed(2024, {2}));
  const CheckResult r = checks::threshold_sign(VerifyOptions{}, rng, 1000);
  return {r.passed() && r.checked == 1000, fmt("%zu triples, %zu violations", r.checked, r.failures)};
}

Outcome threshold_orderings() {
  SplitMix64 rng(derive_seed(2024, {3}));
  std::size_t done = 0;
  std::size_t violations = 0;
  while (done < 100) {
    const Instance inst = sample_strict_instance(rng, 4, 300);
    // R = 0 collapses every removal threshold to vMax/nu, so the strict order needs rent.
    if (inst.renting_rate() == 0.0) continue;
    ++done;
    for (std::size_t i = 1; i < inst.size(); ++i) {
      if (!(add_threshold(inst, i - 1) > add_threshold(inst, i) &&
            remove_threshold(inst, i - 1) > remove_threshold(inst, i))) {
        ++violations;
        break;
      }
    }
  }
  return {violations == 0, fmt("%zu strictly correlated instances, %zu violations", done, violations)};
}

Outcome prefix_chain() {
  SplitMix64 rng(derive_seed(2024, {4}));
  std::size_t violations = 0;
  std::size_t ties = 0;
  for (std::size_t t = 0; t < 100; ++t) {
    const Instance inst = sample_strict_instance(rng, 4, 300);
    if (!checks::prefix_chain_holds(inst)) ++violations;
    if (optimal_prefix(inst).tie) ++ties;
  }
  return {violations == 0, fmt("100 instances, %zu violations, %zu ties at o", violations, ties)};
}

Outcome pareto_front_oracle() {
  SplitMix64 rng(derive_seed(2024, {5}));
  std::size_t mismatches = 0;
  for (std::size_t t = 0; t < 100; ++t) {
    const Instance inst = sample_strict_instance(rng, 3, 12);
    const auto front = pareto_front(inst);
    if (!checks::same_objective_sets(checks::objective_points(inst, front),
                                     checks::objective_points(inst, brute_force_pareto_front(inst)))) {
      ++mismatches;
    }
  }
  return {mismatches == 0, fmt("100 instances n <= 12, %zu mismatches", mismatches)};
}

Outcome gsemo_front_recovery() {
  const std::size_t n = 50;
  const std::uint64_t budget = 20 * n * n * n;
  const auto instances = benchmark_instances(n, 30, 606, false);
  std::vector<std::uint8_t> ok(instances.size(), 0);
  parallel_for(instances.size(), workers(), [&](std::size_t i) {
    const Instance& inst = instances[i];
    RunConfig cfg;
    cfg.max_evaluations = budget;
    cfg.seed = run_seed(606, i, Algorithm::gsemo, 0);
    cfg.init = InitMode::zero;
    cfg.trace_stride = budget;
    const RunResult r = run_gsemo(inst, cfg);
    std::vector<Solution> feasible;
    for (const auto& s : r.archive) {
      if (s.weight() <= inst.capacity()) feasible.push_back(s);
    }
    ok[i] = checks::same_objective_sets(checks::objective_points(inst, feasible),
                                        checks::objective_points(inst, pareto_front(inst)));
  });
  const auto hits = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  return {hits >= 28, fmt("n=%zu, budget 20n^3=%llu, front recovered in %zu/30", n,
                          static_cast<unsigned long long>(budget), hits)};
}

Outcome rls_swap_optimum() {
  const std::size_t n = 300;
  const std::uint64_t budget = static_cast<std::uint64_t>(n) * n * n;
  const auto instances = benchmark_instances(n, 30, 707, false);
  std::vector<std::uint64_t> evals(instances.size());
  std::vector<std::uint8_t> hit(instances.size()), monotone(instances.size());
  parallel_for(instances.size(), workers(), [&](std::size_t i) {
    const Instance& inst = instances[i];
    const auto opt = optimal_prefix(inst);
    RunConfig cfg;
    cfg.max_evaluations = budget;
    cfg.target_benefit = opt.optimal_benefit;
    cfg.seed = run_seed(707, i, Algorithm::rls_swap, 0);
    cfg.init = InitMode::zero;
    HMonitor monitor(inst, opt.k);
    const RunResult r = run_rls_swap(inst, cfg, std::ref(monitor));
    evals[i] = r.evaluations;
    hit[i] = r.hit_target;
    monotone[i] = monitor.monotone();
  });
  const auto hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  const auto mono = static_cast<std::size_t>(std::count(monotone.begin(), monotone.end(), 1));
  return {hits == 30 && mono == 30, fmt("hit %zu/30 within n^3, h monotone %zu/30, max evals %llu", hits, mono,
                                        static_cast<unsigned long long>(*std::max_element(evals.begin(), evals.end())))};
}

Outcome one_plus_one_uniform() {
  const std::size_t n = 300;
  const double c = 4.0;
  const auto instances = benchmark_instances(n, 30, 808, true);
  std::vector<std::uint8_t> hit(instances.size());
  std::vector<double> ratio(instances.size());
  parallel_for(instances.size(), workers(), [&](std::size_t i) {
    const Instance& inst = instances[i];
    const double shape = static_cast<double>(n) * static_cast<double>(n) *
                         std::log(std::max<double>(static_cast<double>(n), static_cast<double>(inst.max_profit())));
    RunConfig cfg;
    cfg.max_evaluations = static_cast<std::uint64_t>(std::ceil(c * shape));
    cfg.target_benefit = optimal_prefix(inst).optimal_benefit;
    cfg.seed = run_seed(808, i, Algorithm::opo_ea, 0);
    cfg.init = InitMode::zero;
    cfg.trace_stride = cfg.max_evaluations;
    const RunResult r = run_one_plus_one_ea(inst, cfg);
    hit[i] = r.hit_target;
    ratio[i] = static_cast<double>(r.evaluations) / shape;
  });
  const auto hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  return {hits >= 28, fmt("c=%.0f, C=%lld, hit %zu/30, max evals/(n^2 ln max(n,pmax)) = %.3f", c,
                          static_cast<long long>(instances.front().capacity()), hits,
                          *std::max_element(ratio.begin(), ratio.end()))};
}

std::string convergence_csv(const ExperimentSpec& spec) {
  std::ostringstream out;
  write_convergence_csv(out, convergence_experiment(spec));
  return out.str();
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::ostringstream out;
  write_scaling_csv(out, rows);
  return out.str();
}

ExperimentSpec fig1_spec() {
  ExperimentSpec spec;
  spec.n = 300;
  spec.repetitions = 30;
  spec.base_seed = 1;
  spec.workers = workers();
  return spec;
}

Outcome fig1_trend() {
  const ExperimentSpec spec = fig1_spec();
  const auto rows = convergence_experiment(spec);
  {
    std::ofstream f("fig1_convergence.csv", std::ios::binary);
    write_convergence_csv(f, rows);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].algorithm == rows[i - 1].algorithm &&
        rows[i].mean_normalized_benefit < rows[i - 1].mean_normalized_benefit) {
      monotone = false;
    }
  }
  // Runs are prefixes of the full-budget runs, so a 10^5 budget ends the grid exactly there.
  ExperimentSpec at = spec;
  at.budget = 100000;
  double rls = -1.0;
  double ea = -1.0;
  for (const auto& r : convergence_experiment(at)) {
    if (r.evaluations != at.budget) continue;
    if (r.algorithm == Algorithm::rls_swap) rls = r.mean_normalized_benefit;
    if (r.algorithm == Algorithm::opo_ea) ea = r.mean_normalized_benefit;
  }
  return {monotone && rls >= ea && rls >= 0.0,
          fmt("at 1e5: rls_swap %.4f, opo_ea %.4f; curves monotone: %s", rls, ea, monotone ? "yes" : "no")};
}

Outcome fig2_trend() {
  const auto t0 = Clock::now();
  ExperimentSpec spec;
  spec.sizes = {100, 200, 500, 1000, 2000};
  spec.repetitions = 30;
  spec.workers = workers();
  const auto rows = scaling_experiment(spec);
  const double secs = seconds_since(t0);
  {
    std::ofstream f("fig2_scaling.csv", std::ios::binary);
    write_scaling_csv(f, rows);
  }
  const double slope = log_log_slope(rows, Algorithm::rls_swap);
  bool ordered = true;
  std::size_t censored = 0;
  for (const auto& r : rows) {
    censored += r.censored;
    if (!multi_objective(r.algorithm)) continue;
    for (const auto& base : rows) {
      if (base.algorithm == Algorithm::rls_swap && base.n == r.n && r.mean_evals < base.mean_evals) ordered = false;
    }
  }
  return {slope >= 1.0 && slope <= 2.5 && ordered && secs < 7200.0,
          fmt("rls_swap slope %.3f, MO >= rls_swap at every size: %s, censored runs %zu, %.0fs", slope,
              ordered ? "yes" : "no", censored, secs)};
}

Outcome determinism() {
  ExperimentSpec conv = fig1_spec();
  conv.workers = 1;
  const std::string c1 = convergence_csv(conv);
  conv.workers = 8;
  const std::string c8 = convergence_csv(conv);

  ExperimentSpec scal;
  scal.sizes = {100, 200, 500};
  scal.repetitions = 30;
  scal.workers = 1;
  const std::string s1 = scaling_csv(scaling_experiment(scal));
  scal.workers = 8;
  const std::string s8 = scaling_csv(scaling_experiment(scal));
  return {c1 == c8 && s1 == s8, fmt("convergence CSV identical: %s (%zu bytes), scaling CSV identical: %s (%zu bytes)",
                                    c1 == c8 ? "yes" : "no", c1.size(), s1 == s8 ? "yes" : "no", s1.size())};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"oracle-equivalence", oracle_equivalence},
      {"threshold-sign-equivalence", sign_equivalence},
      {"threshold-orderings", threshold_orderings},
      {"unimodal-prefix-chain", prefix_chain},
      {"pareto-front-oracle", pareto_front_oracle},
      {"gsemo-front-recovery", gsemo_front_recovery},
      {"rls-swap-optimum", rls_swap_optimum},
      {"one-plus-one-ea-uniform", one_plus_one_uniform},
      {"convergence-trend", fig1_trend},
      {"scaling-trend", fig2_trend},
      {"determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

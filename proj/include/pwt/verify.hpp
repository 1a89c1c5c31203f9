#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pwt/algorithms.hpp"
#include "pwt/brute_force.hpp"
#include "pwt/evaluate.hpp"
#include "pwt/generate.hpp"
#include "pwt/instance.hpp"
#include "pwt/instance_io.hpp"
#include "pwt/rng.hpp"
#include "pwt/solution.hpp"
#include "pwt/theory.hpp"

namespace pwt {

using ThresholdFn = std::function<double(const Instance&, std::size_t)>;

struct VerifyOptions {
  std::size_t sample_count = 100;
  std::uint64_t seed = 1;
  /// Add-threshold under test; the removal threshold is derived as add + w_i.
  ThresholdFn add_threshold = [](const Instance& inst, std::size_t i) { return pwt::add_threshold(inst, i); };
};

struct CheckResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::optional<nlohmann::json> counterexample;  ///< first failure, with its instance

  [[nodiscard]] bool passed() const noexcept { return failures == 0; }
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
  }

  [[nodiscard]] const CheckResult& find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return c;
    }
    throw std::out_of_range("no check named " + name);
  }

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json row{{"check", c.name}, {"passed", c.passed()}, {"checked", c.checked}, {"failures", c.failures}};
      if (c.counterexample) row["counterexample"] = *c.counterexample;
      out.push_back(std::move(row));
    }
    return out;
  }
};

/// Records one check outcome; the first failure keeps its counterexample.
class CheckRecorder {
 public:
  explicit CheckRecorder(std::string name) { result_.name = std::move(name); }

  void expect(bool ok, const Instance& inst, const std::string& detail, const Solution* s = nullptr) {
    ++result_.checked;
    if (ok) return;
    ++result_.failures;
    if (!result_.counterexample) {
      nlohmann::json ce{{"detail", detail}, {"instance", instance_to_json(inst)}};
      if (s != nullptr) ce["solution"] = s->to_string();
      result_.counterexample = std::move(ce);
    }
  }

  CheckResult take() { return std::move(result_); }

 private:
  CheckResult result_;
};

/**
 * Random strictly correlated instance with randomised constants: renting
 * rate, distance, speeds and capacity vary around the benchmark values.
 */
[[nodiscard]] inline Instance sample_strict_instance(SplitMix64& rng, std::size_t n_lo, std::size_t n_hi) {
  while (true) {
    GenParams p;
    p.n = n_lo + static_cast<std::size_t>(rng.below(n_hi - n_lo + 1));
    p.renting_rate = rng.uniform01() < 0.1 ? 0.0 : 1.0 + 199.0 * rng.uniform01();
    p.distance = 1.0 + 99.0 * rng.uniform01();
    p.v_max = 0.5 + 1.5 * rng.uniform01();
    p.v_min = p.v_max * (0.05 + 0.85 * rng.uniform01());
    p.seed = rng.next();
    const std::int64_t expected_total = static_cast<std::int64_t>(p.n) * 500;
    p.capacity = rng.between(1, std::max<std::int64_t>(2, expected_total));
    Instance inst = gen_correlated(p);
    if (has_distinct_items(inst)) return inst;
  }
}

/// Random solution whose density is itself drawn uniformly, so loads cover the whole range.
[[nodiscard]] inline Solution sample_solution(const Instance& inst, SplitMix64& rng) {
  const double density = rng.uniform01();
  Solution s = Solution::empty(inst);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (rng.uniform01() < density) s.flip(inst, i);
  }
  return s;
}

namespace checks {

inline CheckResult cache_consistency(const VerifyOptions& opt, SplitMix64& rng) {
  CheckRecorder rec("cache-consistency");
  for (std::size_t t = 0; t < opt.sample_count; ++t) {
    // Multi-city layouts too: caches are per city.
    const std::size_t n = 1 + rng.below(30);
    const std::size_t m = 1 + rng.below(4);
    std::vector<Item> items;
    std::vector<std::size_t> cities;
    for (std::size_t i = 0; i < n; ++i) {
      items.push_back({rng.between(1, 1000), rng.between(1, 1000)});
      cities.push_back(rng.below(m));
    }
    std::vector<double> dist;
    for (std::size_t j = 0; j < m; ++j) dist.push_back(1.0 + 99.0 * rng.uniform01());
    const Instance inst(items, cities, dist, 70.0, 0.1, 1.0, rng.between(1, 20000));
    Solution s = sample_solution(inst, rng);
    rec.expect(s.weight() == total_weight(inst, s) && s.profit() == total_profit(inst, s), inst,
               "cached aggregates differ from a rescan", &s);
    const std::size_t i = rng.below(n);
    const std::int64_t w0 = s.weight();
    const std::int64_t p0 = s.profit();
    const bool had = s[i];
    s.flip(inst, i);
    const std::int64_t sign = had ? -1 : 1;
    rec.expect(s.weight() == w0 + sign * items[i].weight && s.profit() == p0 + sign * items[i].profit &&
                   s.weight() == total_weight(inst, s),
               inst, "single flip is not additive", &s);
  }
  return rec.take();
}

inline CheckResult fitness_preorder(const VerifyOptions& opt, SplitMix64& rng) {
  CheckRecorder rec("fitness-preorder");
  for (std::size_t t = 0; t < opt.sample_count; ++t) {
    const Instance inst = sample_strict_instance(rng, 4, 16);
    const Fitness a = fitness(inst, sample_solution(inst, rng));
    const Fitness b = fitness(inst, sample_solution(inst, rng));
    const Fitness c = fitness(inst, sample_solution(inst, rng));
    const auto ab = compare_fitness(a, b);
    const auto ba = compare_fitness(b, a);
    const int outcomes = (ab < 0 ? 1 : 0) + (ab == 0 ? 1 : 0) + (ab > 0 ? 1 : 0);
    rec.expect(outcomes == 1 && ((ab < 0) == (ba > 0)), inst, "comparison is not antisymmetric");
    if (compare_fitness(a, b) >= 0 && compare_fitness(b, c) >= 0) {
      rec.expect(compare_fitness(a, c) >= 0, inst, "comparison is not transitive");
    }
  }
  return rec.take();
}

inline CheckResult travel_time_monotone(const VerifyOptions& opt, SplitMix64& rng) {
  CheckRecorder rec("travel-time-monotone");
  for (std::size_t t = 0; t < opt.sample_count; ++t) {
    const Instance inst = sample_strict_instance(rng, 4, 16);
    const std::int64_t c = inst.capacity();
    const std::int64_t step = std::max<std::int64_t>(1, c / 2000);
    bool ok = true;
    double prev = travel_time_for_load(inst, 0);
    for (std::int64_t w = step; w <= c && ok; w += step) {
      const double cur = travel_time_for_load(inst, w);
      ok = cur > prev;
      prev = cur;
    }
    rec.expect(ok, inst, "travel time does not strictly increase on [0, C]");
  }
  return rec.take();
}

inline CheckResult benefit_increment(const VerifyOptions& opt, SplitMix64& rng) {
  CheckRecorder rec("benefit-increment");
  std::size_t done = 0;
  while (done < opt.sample_count) {
    const Instance inst = sample_strict_instance(rng, 4, 40);
    const Solution s = sample_solution(inst, rng);
    const std::size_t i = rng.below(inst.size());
    if (s[i] || s.weight() + inst.item(i).weight > inst.capacity()) continue;
    ++done;
    Solution grown = s;
    grown.flip(inst, i);
    const double nu = inst.nu();
    const double w = static_cast<double>(s.weight());
    const double wi = static_cast<double>(inst.item(i).weight);
    const double rdnu = inst.renting_rate() * inst.distances().front() * nu;
    const double expected = static_cast<double>(inst.item(i).profit) -
                            rdnu * wi / ((inst.v_max() - nu * (w + wi)) * (inst.v_max() - nu * w));
    const double b0 = benefit(inst, s);
    const double b1 = benefit(inst, grown);
    const double band = 1e-9 * std::max({1.0, std::abs(b0), std::abs(b1)});
    rec.expect(std::abs((b1 - b0) - expected) <= band, inst, "benefit increment differs from closed form", &s);
  }
  return rec.take();
}

inline CheckResult dominance_order(const VerifyOptions& opt, SplitMix64& rng) {
  CheckRecorder rec("dominance-order");
  const std::size_t instances = std::max<std::size_t>(1, opt.sample_count / 20);
  for (std::size_t t = 0; t < instances; ++t) {
    const Instance inst = sample_strict_instance(rng, 6, 10);
    const std::size_t n = inst.size();
    std::vector<Objectives> all;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      all.push_back(objectives(inst, Solution::from_bits(inst, detail::bits_of(mask, n))));
    }
    bool order_ok = true;
    for (const auto& a : all) {
      for (const auto& b : all) {
        if (a.fitness.feasible() && !b.fitness.feasible() && a.weight <= b.weight) {
          order_ok = order_ok && strongly_dominates(a, b);
        }
        if (!a.fitness.feasible() && !b.fitness.feasible() && a.fitness.violation > b.fitness.violation) {
          order_ok = order_ok && strongly_dominates(a, b);
        }
      }
    }
    rec.expect(order_ok, inst, "feasible-beats-infeasible or violation ordering broken");
    bool relation_ok = true;
    for (std::size_t k = 0; k < 20000; ++k) {
      const auto& a = all[rng.below(all.size())];
      const auto& b = all[rng.below(all.size())];
      const auto& c = all[rng.below(all.size())];
      if (weakly_dominates(a, b) && weakly_dominates(b, c)) relation_ok = relation_ok && weakly_dominates(a, c);
      if (weakly_dominates(a, b) && weakly_dominates(b, a)) {
        relation_ok = relation_ok && a.weight == b.weight && compare_fitness(a.fitness, b.fitness) == 0;
      }
    }
    rec.expect(relation_ok, inst, "dominance is not transitive or not antisymmetric up to objective equality");
  }
  return rec.take();
}

/**
 * Adding item i improves B iff W(s) < addThreshold(i); removing it improves
 * B iff W(s) > addThreshold(i) + w_i. Loads within the tolerance band of a
 * threshold are skipped; only feasible offspring are sampled.
 */
inline CheckResult threshold_sign(const VerifyOptions& opt, SplitMix64& rng, std::size_t triples) {
  CheckRecorder rec("threshold-sign");
  std::size_t done = 0;
  while (done < triples) {
    const Instance inst = sample_strict_instance(rng, 4, 40);
    const Solution s = sample_solution(inst, rng);
    const std::size_t i = rng.below(inst.size());
    if (s.weight() > inst.capacity()) continue;
    Solution t = s;
    t.flip(inst, i);
    if (t.weight() > inst.capacity()) continue;
    const double add = opt.add_threshold(inst, i);
    const double w = static_cast<double>(s.weight());
    const double gain = benefit(inst, t) - benefit(inst, s);
    if (!s[i]) {
      if (load_at_threshold(s.weight(), add)) continue;
      rec.expect((gain > 0.0) == (w < add), inst,
                 "adding item " + std::to_string(i) + " disagrees with its threshold", &s);
    } else {
      const double remove = add + static_cast<double>(inst.item(i).weight);
      if (load_at_threshold(s.weight(), remove)) continue;
      rec.expect((gain > 0.0) == (w > remove), inst,
                 "removing item " + std::to_string(i) + " disagrees with its threshold", &s);
    }
    ++done;
  }
  return rec.take();
}

inline CheckResult threshold_monotone(const VerifyOptions& opt, SplitMix64& rng) {
  CheckRecorder rec("threshold-monotone");
  for (std::size_t t = 0; t < opt.sample_count; ++t) {
    const Instance inst = sample_strict_instance(rng, 4, 300);
    bool ok = true;
    for (std::size_t i = 1; i < inst.size() && ok; ++i) {
      const double a0 = opt.add_threshold(inst, i - 1);
      const double a1 = opt.add_threshold(inst, i);
      const double r0 = a0 + static_cast<double>(inst.item(i - 1).weight);
      const double r1 = a1 + static_cast<double>(inst.item(i).weight);
      // R = 0 reduces the thresholds to vMax/nu - w and vMax/nu, so ties are expected.
      ok = inst.renting_rate() > 0.0 ? (a0 > a1 && r0 > r1)
                                     : (a0 >= a1 - tolerance_band(a0, a1) && r0 >= r1 - tolerance_band(r0, r1));
    }
    rec.expect(ok, inst, "thresholds are not decreasing along the item order");
  }
  return rec.take();
}

/**
 * Prefix benefits rise strictly up to o and fall strictly after o + 1,
 * with the only possible equality between s_o and s_{o+1}. Uses the
 * unclamped benefit over the loads where it is defined.
 */
inline bool prefix_chain_holds(const Instance& inst) {
  const auto opt = optimal_prefix(inst);
  const auto w = prefix_weights(inst);
  std::vector<double> b;
  std::int64_t profit = 0;
  for (std::size_t i = 0; i <= inst.size(); ++i) {
    if (static_cast<double>(w[i]) >= speed_limit_load(inst)) break;
    b.push_back(unclamped_benefit(inst, w[i], profit));
    if (i < inst.size()) profit += inst.item(i).profit;
  }
  for (std::size_t i = 1; i < b.size(); ++i) {
    const auto cmp = compare_benefit(b[i - 1], b[i]);
    if (i <= opt.o) {
      if (cmp >= 0) return false;
    } else if (i == opt.o + 1) {
      if (cmp < 0) return false;
      if (cmp == 0 && !load_at_threshold(w[opt.o], add_threshold(inst, opt.o))) return false;
    } else if (cmp <= 0) {
      return false;
    }
  }
  return true;
}

inline CheckResult prefix_chain(const VerifyOptions& opt, SplitMix64& rng) {
  CheckRecorder rec("prefix-chain");
  for (std::size_t t = 0; t < opt.sample_count; ++t) {
    const Instance inst = sample_strict_instance(rng, 4, 60);
    rec.expect(prefix_chain_holds(inst), inst, "prefix benefits are not unimodal around o");
  }
  return rec.take();
}

inline CheckResult prefix_dominance(const VerifyOptions& opt, SplitMix64& rng) {
  CheckRecorder rec("prefix-dominance");
  const std::size_t instances = std::max<std::size_t>(1, opt.sample_count / 10);
  for (std::size_t t = 0; t < instances; ++t) {
    const Instance inst = sample_strict_instance(rng, 4, 12);
    const std::size_t n = inst.size();
    std::vector<double> prefix_b(n + 1);
    const auto prefix_w = prefix_weights(inst);
    for (std::size_t i = 0; i <= n; ++i) prefix_b[i] = prefix_benefit(inst, i);
    std::optional<Solution> beaten;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n) && !beaten; ++mask) {
      const Solution s = Solution::from_bits(inst, detail::bits_of(mask, n));
      const std::size_t i = s.ones();
      if (prefix_w[i] > s.weight() || compare_benefit(prefix_b[i], benefit(inst, s)) < 0) beaten = s;
    }
    rec.expect(!beaten, inst, "prefix s_i is beaten by a solution of the same size", beaten ? &*beaten : nullptr);
  }
  return rec.take();
}

inline CheckResult optimum_vs_brute_force(const VerifyOptions& opt, SplitMix64& rng) {
  CheckRecorder rec("optimum-vs-brute-force");
  for (std::size_t t = 0; t < opt.sample_count; ++t) {
    const Instance inst = sample_strict_instance(rng, 4, 14);
    const auto analytic = optimal_prefix(inst);
    const auto brute = brute_force_optimum(inst);
    rec.expect(benefits_equal(analytic.optimal_benefit, brute.benefit), inst,
               "optimal prefix benefit differs from exhaustive maximum", &brute.solution);
  }
  return rec.take();
}

/// Objective points (W, B) of a solution set, sorted by weight.
inline std::vector<std::pair<std::int64_t, double>> objective_points(const Instance& inst,
                                                                     const std::vector<Solution>& set) {
  std::vector<std::pair<std::int64_t, double>> pts;
  for (const auto& s : set) pts.emplace_back(s.weight(), benefit(inst, s));
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline bool same_objective_sets(const std::vector<std::pair<std::int64_t, double>>& a,
                                const std::vector<std::pair<std::int64_t, double>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].first != b[i].first || !benefits_equal(a[i].second, b[i].second)) return false;
  }
  return true;
}

inline CheckResult pareto_vs_brute_force(const VerifyOptions& opt, SplitMix64& rng) {
  CheckRecorder rec("pareto-vs-brute-force");
  const std::size_t instances = std::max<std::size_t>(1, opt.sample_count / 5);
  for (std::size_t t = 0; t < instances; ++t) {
    const Instance inst = sample_strict_instance(rng, 3, 10);
    const auto analytic = pareto_front(inst);
    const auto brute = brute_force_pareto_front(inst);
    rec.expect(analytic.size() == optimal_prefix(inst).k + 1 &&
                   same_objective_sets(objective_points(inst, analytic), objective_points(inst, brute)),
               inst, "prefix Pareto set differs from exhaustive non-dominated set");
  }
  return rec.take();
}

}  // namespace checks

/// Tracks the protected-prefix index along accepted feasible steps of one run.
class HMonitor {
 public:
  HMonitor(const Instance& inst, std::size_t k) : inst_(inst), k_(k) {}

  void operator()(const Step& step) {
    if (!step.accepted || step.offspring.weight() > inst_.capacity()) return;
    const std::size_t h = compute_h(inst_, canonicalize_identical(inst_, step.offspring), k_);
    if (last_ && h < *last_ && !violation_) violation_ = step.offspring;
    last_ = h;
    ++observed_;
  }

  [[nodiscard]] bool monotone() const noexcept { return !violation_.has_value(); }
  [[nodiscard]] const std::optional<Solution>& violation() const noexcept { return violation_; }
  [[nodiscard]] std::size_t observed() const noexcept { return observed_; }
  [[nodiscard]] std::optional<std::size_t> last() const noexcept { return last_; }

 private:
  const Instance& inst_;
  std::size_t k_;
  std::optional<std::size_t> last_;
  std::optional<Solution> violation_;
  std::size_t observed_ = 0;
};

namespace checks {

inline CheckResult h_monotone(const VerifyOptions& opt, SplitMix64& rng) {
  CheckRecorder rec("h-monotone");
  const std::size_t runs = std::max<std::size_t>(1, opt.sample_count / 5);
  for (std::size_t t = 0; t < runs; ++t) {
    const Instance inst = sample_strict_instance(rng, 10, 40);
    const auto best = optimal_prefix(inst);
    RunConfig cfg;
    cfg.max_evaluations = 20 * inst.size() * inst.size() * inst.size();
    cfg.target_benefit = best.optimal_benefit;
    cfg.seed = rng.next();
    cfg.init = t % 2 == 0 ? InitMode::zero : InitMode::uniform_random;
    HMonitor monitor(inst, best.k);
    run_rls_swap(inst, cfg, std::ref(monitor));
    rec.expect(monitor.monotone(), inst, "protected-prefix index decreased along an accepted step",
               monitor.violation() ? &*monitor.violation() : nullptr);
  }
  return rec.take();
}

}  // namespace checks

/// Runs every structural check on freshly sampled instances.
[[nodiscard]] inline VerifyReport verify_suite(const VerifyOptions& opt) {
  if (opt.sample_count < 1) throw std::invalid_argument("sample count must be at least 1");
  VerifyReport report;
  // Each check draws from its own stream so that adding a check leaves the others unchanged.
  auto stream = [&](std::uint64_t id) { return SplitMix64(derive_seed(opt.seed, {0x7E51F1ULL, id})); };
  auto run = [&](std::uint64_t id, auto&& check) {
    SplitMix64 rng = stream(id);
    report.checks.push_back(check(rng));
  };
  run(1, [&](SplitMix64& r) { return checks::cache_consistency(opt, r); });
  run(2, [&](SplitMix64& r) { return checks::fitness_preorder(opt, r); });
  run(3, [&](SplitMix64& r) { return checks::travel_time_monotone(opt, r); });
  run(4, [&](SplitMix64& r) { return checks::benefit_increment(opt, r); });
  run(5, [&](SplitMix64& r) { return checks::dominance_order(opt, r); });
  run(6, [&](SplitMix64& r) { return checks::threshold_sign(opt, r, 10 * opt.sample_count); });
  run(7, [&](SplitMix64& r) { return checks::threshold_monotone(opt, r); });
  run(8, [&](SplitMix64& r) { return checks::prefix_chain(opt, r); });
  run(9, [&](SplitMix64& r) { return checks::prefix_dominance(opt, r); });
  run(10, [&](SplitMix64& r) { return checks::optimum_vs_brute_force(opt, r); });
  run(11, [&](SplitMix64& r) { return checks::pareto_vs_brute_force(opt, r); });
  run(12, [&](SplitMix64& r) { return checks::h_monotone(opt, r); });
  return report;
}

}  // namespace pwt

// pwt: instance generation, single runs, experiments and theory checks.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwt/pwt.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::size_t n = 300;
  std::uint64_t seed = 1;
  std::string instances;
  std::string algorithms;
  std::optional<std::uint64_t> budget;
  std::string sizes;
  std::string out;
  std::size_t workers = 1;
  std::optional<std::string> init;
  std::string counting = "effective";
  bool uniform = false;
};

/// Thrown for bad user input; reported with exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (!tok.empty()) parts.push_back(tok);
  }
  return parts;
}

std::vector<pwt::Algorithm> parse_algorithms(const std::string& csv) {
  if (csv.empty()) return {pwt::kAllAlgorithms.begin(), pwt::kAllAlgorithms.end()};
  std::vector<pwt::Algorithm> out;
  for (const auto& name : split_csv(csv)) out.push_back(pwt::parse_algorithm(name));
  if (out.empty()) throw UsageError("--algorithms is empty");
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
  std::vector<std::size_t> out;
  for (const auto& tok : split_csv(csv)) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size()) throw UsageError("--sizes: '" + tok + "' is not a positive integer");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

pwt::InitMode parse_init(const std::string& s) {
  if (s == "zero") return pwt::InitMode::zero;
  if (s == "random") return pwt::InitMode::uniform_random;
  throw UsageError("--init must be zero or random");
}

pwt::EvalCounting parse_counting(const std::string& s) {
  if (s == "all") return pwt::EvalCounting::all_iterations;
  if (s == "effective") return pwt::EvalCounting::effective_only;
  throw UsageError("--counting must be all or effective");
}

bool is_count(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

/// Instance files of a directory (sorted by name) or a single file.
std::vector<fs::path> instance_paths(const std::string& where) {
  const fs::path p(where);
  if (fs::is_regular_file(p)) return {p};
  if (!fs::is_directory(p)) throw UsageError("no such instance file or directory: " + where);
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(p)) {
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw UsageError("no .json instances in " + where);
  return out;
}

/// `--instances` as a directory/file, or as a count of generated instances.
std::vector<pwt::Instance> resolve_instances(const Options& o, std::size_t default_count) {
  if (o.instances.empty() || is_count(o.instances)) {
    const std::size_t count = o.instances.empty() ? default_count : std::stoull(o.instances);
    if (count < 1) throw UsageError("--instances count must be at least 1");
    return pwt::benchmark_instances(o.n, count, o.seed, o.uniform);
  }
  std::vector<pwt::Instance> out;
  for (const auto& p : instance_paths(o.instances)) out.push_back(pwt::load_instance(p.string()));
  return out;
}

/// Writes to --out, or stdout when it is empty.
template <class Fn>
void emit(const std::string& out, Fn&& write) {
  if (out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  write(f);
}

json solution_json(const pwt::Instance& inst, const pwt::Solution& s) {
  const auto f = pwt::fitness(inst, s);
  return {{"bits", s.to_string()},
          {"weight", s.weight()},
          {"profit", s.profit()},
          {"benefit", f.benefit},
          {"feasible", f.feasible()}};
}

int cmd_gen(const Options& o) {
  if (o.out.empty()) throw UsageError("gen needs --out");
  pwt::GenParams params;
  params.n = o.n;
  if (o.instances.empty()) {
    params.seed = pwt::instance_seed(o.seed, o.n, 0);
    pwt::save_instance(o.uniform ? pwt::gen_uniform(params) : pwt::gen_correlated(params), o.out);
    return 0;
  }
  if (!is_count(o.instances)) throw UsageError("gen: --instances must be a count");
  const std::size_t count = std::stoull(o.instances);
  if (count < 1) throw UsageError("--instances count must be at least 1");
  fs::create_directories(o.out);
  const auto batch = pwt::benchmark_instances(o.n, count, o.seed, o.uniform, params);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const std::string name =
        "instance_" + std::to_string(o.n) + "_" + std::to_string(o.seed) + "_" + std::to_string(i) + ".json";
    pwt::save_instance(batch[i], (fs::path(o.out) / name).string());
  }
  return 0;
}

int cmd_run(const Options& o) {
  const auto algorithms = parse_algorithms(o.algorithms);
  const auto instances = resolve_instances(o, 1);
  pwt::RunConfig base;
  if (o.budget) base.max_evaluations = *o.budget;
  base.init = o.init ? parse_init(*o.init) : pwt::InitMode::uniform_random;
  base.counting = parse_counting(o.counting);
  base.validate();

  json results = json::array();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    std::optional<pwt::OptResult> opt;
    if (inst.correlated()) opt = pwt::optimal_prefix(inst);
    for (const auto a : algorithms) {
      pwt::RunConfig cfg = base;
      cfg.seed = pwt::run_seed(o.seed, i, a, 0);
      if (opt) cfg.target_benefit = opt->optimal_benefit;
      const auto r = pwt::run_algorithm(a, inst, cfg);
      json row{{"instance", i},
               {"algorithm", pwt::algorithm_name(a)},
               {"seed", cfg.seed},
               {"evaluations", r.evaluations},
               {"iterations", r.raw_iterations},
               {"hitTarget", r.hit_target},
               {"best", solution_json(inst, r.best_solution)}};
      if (opt) row["optimalBenefit"] = opt->optimal_benefit;
      if (pwt::multi_objective(a)) row["archiveSize"] = r.archive.size();
      results.push_back(std::move(row));
    }
  }
  emit(o.out, [&](std::ostream& out) { out << results.dump(2) << '\n'; });
  return 0;
}

pwt::ExperimentSpec experiment_spec(const Options& o) {
  pwt::ExperimentSpec spec;
  spec.algorithms = parse_algorithms(o.algorithms);
  spec.n = o.n;
  spec.uniform = o.uniform;
  spec.base_seed = o.seed;
  spec.workers = o.workers;
  spec.counting = parse_counting(o.counting);
  spec.init = o.init ? parse_init(*o.init) : pwt::InitMode::zero;
  if (o.budget) spec.budget = *o.budget;
  if (!o.sizes.empty()) spec.sizes = parse_sizes(o.sizes);
  if (spec.workers < 1) throw UsageError("--workers must be at least 1");
  return spec;
}

int cmd_convergence(const Options& o) {
  auto spec = experiment_spec(o);
  const auto instances = resolve_instances(o, spec.repetitions);
  spec.repetitions = instances.size();
  const auto rows = pwt::convergence_experiment(instances, spec);
  emit(o.out, [&](std::ostream& out) { pwt::write_convergence_csv(out, rows); });
  return 0;
}

int cmd_scaling(const Options& o) {
  auto spec = experiment_spec(o);
  if (o.uniform) throw UsageError("scaling runs on correlated instances only");
  if (!o.instances.empty()) {
    if (!is_count(o.instances)) throw UsageError("scaling: --instances must be a count");
    spec.repetitions = std::stoull(o.instances);
  }
  const auto rows = pwt::scaling_experiment(spec);
  emit(o.out, [&](std::ostream& out) { pwt::write_scaling_csv(out, rows); });
  return 0;
}

int cmd_verify(const Options& o) {
  pwt::VerifyOptions opt;
  opt.seed = o.seed;
  if (!o.instances.empty()) {
    if (!is_count(o.instances)) throw UsageError("verify: --instances must be a sample count");
    opt.sample_count = std::stoull(o.instances);
  }
  const auto report = pwt::verify_suite(opt);
  for (const auto& c : report.checks) {
    std::cerr << (c.passed() ? "ok   " : "FAIL ") << c.name << " (" << c.checked - c.failures << "/" << c.checked
              << ")\n";
  }
  emit(o.out, [&](std::ostream& out) { out << report.to_json().dump(2) << '\n'; });
  return report.passed() ? 0 : 1;
}

int cmd_pareto(const Options& o) {
  const auto instances = resolve_instances(o, 1);
  json out = json::array();
  for (const auto& inst : instances) {
    const auto opt = pwt::optimal_prefix(inst);
    json front = json::array();
    for (const auto& s : pwt::pareto_front(inst)) front.push_back(solution_json(inst, s));
    out.push_back({{"k", opt.k}, {"o", opt.o}, {"tie", opt.tie}, {"optimalBenefit", opt.optimal_benefit},
                   {"front", std::move(front)}});
  }
  emit(o.out, [&](std::ostream& os) { os << out.dump(2) << '\n'; });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packing While Travelling: evolutionary algorithms and optimality oracles"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "items per generated instance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "base seed");
    sub->add_option("--instances", o.instances, "instance directory or file, or a count to generate");
    sub->add_option("--out", o.out, "output path (stdout if omitted)");
    sub->add_flag("--uniform", o.uniform, "uniform-weight instances instead of correlated");
  };
  auto runs = [&](CLI::App* sub) {
    sub->add_option("--algorithms", o.algorithms, "comma separated: rls_swap,opo_ea,gsemo,semo,semo_swap");
    sub->add_option("--init", o.init, "initial solution: zero or random");
    sub->add_option("--counting", o.counting, "evaluation counting: all or effective");
  };

  auto* gen = app.add_subcommand("gen", "generate benchmark instances");
  common(gen);
  auto* run = app.add_subcommand("run", "run algorithms on instances, JSON results");
  common(run);
  runs(run);
  run->add_option("--budget", o.budget, "evaluation budget per run");
  auto* conv = app.add_subcommand("convergence", "normalized best-so-far benefit curves (CSV)");
  common(conv);
  runs(conv);
  conv->add_option("--budget", o.budget, "evaluation budget per run");
  conv->add_option("--workers", o.workers, "worker threads");
  auto* scal = app.add_subcommand("scaling", "evaluations to optimum against n (CSV)");
  common(scal);
  runs(scal);
  scal->add_option("--sizes", o.sizes, "comma separated, strictly increasing");
  scal->add_option("--workers", o.workers, "worker threads");
  auto* ver = app.add_subcommand("verify", "structural checks on sampled instances");
  ver->add_option("--instances", o.instances, "sample count");
  ver->add_option("--seed", o.seed, "base seed");
  ver->add_option("--out", o.out, "JSON report path (stdout if omitted)");
  auto* par = app.add_subcommand("pareto", "analytic Pareto front of correlated instances");
  common(par);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*run) return cmd_run(o);
    if (*conv) return cmd_convergence(o);
    if (*scal) return cmd_scaling(o);
    if (*ver) return cmd_verify(o);
    if (*par) return cmd_pareto(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "pwt: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pwt: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

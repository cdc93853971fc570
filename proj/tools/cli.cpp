// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "lqa/bench.hpp"
#include "lqa/engine.hpp"
#include "lqa/format.hpp"
#include "lqa/generators.hpp"
#include "lqa/instance_io.hpp"
#include "lqa/oracle.hpp"

namespace lqa::cli {

namespace {

// Bad input from the user: exit code 1.
class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  std::string instance;
  std::size_t steps = 1000;
  double gamma = 0.1;
  double eta = 1.0;
  std::string momentum;
  std::string optimizer;
  double init_scale = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::optional<std::uint64_t> seed;
  std::string trace;
  std::size_t trace_stride = 1;
  std::string output;
};

struct GenerateOptions {
  std::string kind;
  long long n = 0;
  double alpha = 0.0;
  std::optional<std::uint64_t> seed;
  std::string output;
};

struct BenchOptions {
  std::string spec;
  std::optional<unsigned> workers;
  std::string output;
};

struct OracleOptions {
  std::string instance;
  bool force = false;
  unsigned workers = 1;
  std::size_t max_print = 16;
};

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

IsingProblem load_or_usage(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw UsageError("instance file '" + path + "' does not exist");
  }
  try {
    return load_instance(path);
  } catch (const InstanceParseError& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

SolverConfig solver_config(const SolveOptions& o) {
  SolverConfig cfg;
  cfg.steps = o.steps;
  cfg.gamma = o.gamma;
  cfg.step_size = o.eta;
  cfg.init_scale = o.init_scale;
  cfg.adam_beta1 = o.beta1;
  cfg.adam_beta2 = o.beta2;
  cfg.adam_eps = o.eps;
  if (!o.optimizer.empty()) cfg.optimizer = parse_optimizer(o.optimizer);
  if (!o.momentum.empty()) {
    double mu = 0.0;
    const char* first = o.momentum.data();
    const char* last = first + o.momentum.size();
    auto [end, ec] = std::from_chars(first, last, mu);
    if (ec == std::errc() && end == last) {
      cfg.momentum = mu;
      if (o.optimizer.empty()) cfg.optimizer = OptimizerKind::momentum;
    } else {
      const OptimizerKind kind = parse_optimizer(o.momentum);
      if (!o.optimizer.empty() && kind != cfg.optimizer) {
        throw std::invalid_argument("--momentum " + o.momentum + " conflicts with --optimizer " +
                                    o.optimizer);
      }
      cfg.optimizer = kind;
    }
  }
  cfg.validate();
  return cfg;
}

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  SolverConfig cfg;
  try {
    cfg = solver_config(o);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const IsingProblem problem = load_or_usage(o.instance);
  cfg.seed = o.seed.value_or(fresh_seed());
  if (!o.trace.empty()) cfg.trace_stride = std::max<std::size_t>(1, o.trace_stride);

  const SolveResult result = solve(problem, cfg);

  std::ostringstream text;
  text << "seed: " << cfg.seed << '\n';
  text << "optimizer: " << to_string(cfg.optimizer) << '\n';
  text << "energy: " << format_double(result.objective) << '\n';
  if (problem.ground_energy) {
    text << "ground_energy: " << format_double(*problem.ground_energy) << '\n';
    text << "relative_error: "
         << format_double(relative_error(result.objective, *problem.ground_energy)) << '\n';
  }
  text << "spins: " << result.spins.to_string() << '\n';

  out << text.str();
  if (!o.output.empty()) {
    write_file_atomically(o.output, [&](std::ostream& f) { f << text.str(); });
  }
  if (!o.trace.empty()) {
    write_file_atomically(o.trace, [&](std::ostream& f) { result.trace.write_csv(f); });
  }
  return kExitOk;
}

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  if (o.n < 2) throw UsageError("--n must be at least 2 (got " + std::to_string(o.n) + ")");
  const auto n = static_cast<std::size_t>(o.n);
  const std::uint64_t seed = o.seed.value_or(fresh_seed());

  IsingProblem problem;
  std::vector<std::string> comments = {"generator: " + o.kind};
  try {
    if (o.kind == "wishart") {
      PlantedInstance inst = gen_wishart(n, o.alpha, seed);
      comments.push_back("params: n=" + std::to_string(n) + " alpha=" + format_double(o.alpha));
      comments.push_back("planted: " + inst.planted.to_string());
      problem = std::move(inst.problem);
    } else if (o.kind == "pm1") {
      problem = gen_random_pm1(n, seed);
      comments.push_back("params: n=" + std::to_string(n));
    } else {
      problem = gen_uniform(n, seed);
      comments.push_back("params: n=" + std::to_string(n));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  comments.push_back("seed: " + std::to_string(seed));

  save_instance(o.output, problem, comments);
  out << "wrote " << o.output << " (" << o.kind << ", n=" << n << ", seed " << seed << ")\n";
  if (problem.ground_energy) out << "ground_energy: " << format_double(*problem.ground_energy) << '\n';
  return kExitOk;
}

unsigned resolve_workers(const BenchOptions& o, unsigned from_spec) {
  if (o.workers) return std::max(1U, *o.workers);
  if (const char* env = std::getenv(kWorkersEnv); env != nullptr && *env != '\0') {
    unsigned value = 0;
    const char* last = env + std::char_traits<char>::length(env);
    auto [end, ec] = std::from_chars(env, last, value);
    if (ec != std::errc() || end != last || value == 0) {
      throw UsageError(std::string(kWorkersEnv) + " must be a positive integer");
    }
    return value;
  }
  return std::max(1U, from_spec);
}

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  if (!std::filesystem::exists(o.spec)) {
    throw UsageError("bench spec '" + o.spec + "' does not exist");
  }
  BenchSpec spec;
  try {
    spec = load_bench_spec(o.spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(o.spec + ": " + e.what());
  }
  spec.workers = resolve_workers(o, spec.workers);
  if (!o.output.empty()) spec.output = o.output;
  if (spec.output.empty()) throw UsageError("no output prefix: set \"output\" or pass --output");

  std::vector<TrialReport> reports;
  try {
    reports = run_batch(spec);
  } catch (const InstanceParseError& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto summaries = summarize(reports);
  const BenchOutputs paths = write_bench_outputs(spec.output, reports, summaries);

  for (const auto& s : summaries) {
    out << s.instance << ": " << s.metric;
    if (s.trials > 0) {
      out << " mean=" << format_double(s.mean) << " std=" << format_double(s.std_dev)
          << " min=" << format_double(s.min) << " max=" << format_double(s.max);
    }
    if (s.fraction_at_optimum) out << " at_optimum=" << format_double(*s.fraction_at_optimum);
    out << " (" << s.trials << " ok, " << s.failed << " failed)\n";
  }
  out << "trials: " << paths.trials.string() << '\n';
  out << "summary: " << paths.summary.string() << '\n';
  for (const auto& t : paths.traces) out << "trace: " << t.string() << '\n';
  return kExitOk;
}

int cmd_oracle(const OracleOptions& o, std::ostream& out, std::ostream& err) {
  const IsingProblem problem = load_or_usage(o.instance);
  if (problem.size() > kBruteForceSpinCap) {
    if (!o.force) {
      throw UsageError("instance has " + std::to_string(problem.size()) +
                       " spins; brute force is capped at " + std::to_string(kBruteForceSpinCap) +
                       " (use --force to override)");
    }
    err << "estimated runtime: "
        << format_double(brute_force_estimate_seconds(problem.size()) / o.workers)
        << " s on " << o.workers << " worker(s)\n";
  }
  const GroundStates gs =
      brute_force_ground(problem, {.workers = std::max(1U, o.workers), .allow_over_cap = o.force});
  out << "ground_energy: " << format_double(gs.energy) << '\n';
  out << "minimisers: " << gs.minimisers.size() << '\n';
  for (std::size_t k = 0; k < gs.minimisers.size() && k < o.max_print; ++k) {
    out << gs.minimisers[k].to_string() << '\n';
  }
  if (problem.ground_energy) {
    const bool agrees = std::abs(*problem.ground_energy - gs.energy) <= energy_tolerance(problem);
    out << "declared_ground_energy: " << format_double(*problem.ground_energy)
        << (agrees ? " (agrees)" : " (DISAGREES)") << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local quantum annealing for QUBO / Ising problems", "lqa"};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Anneal one instance and print the result");
  solve_cmd->add_option("instance", solve_opts.instance, "Instance file")->required();
  solve_cmd->add_option("--steps", solve_opts.steps, "Number of annealing steps N")
      ->capture_default_str()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--gamma", solve_opts.gamma, "Strength of the problem term")
      ->capture_default_str();
  solve_cmd->add_option("--eta", solve_opts.eta, "Step size")->capture_default_str();
  solve_cmd->add_option("--momentum", solve_opts.momentum,
                        "Momentum value mu (selects the momentum optimizer, default mu 0.99), "
                        "or an optimizer name: vanilla|momentum|adam");
  solve_cmd->add_option("--optimizer", solve_opts.optimizer,
                        "Optimizer: vanilla|momentum|adam (default adam)");
  solve_cmd->add_option("--init-scale", solve_opts.init_scale,
                        "Initial weights are init-scale * U[-1,1]")->capture_default_str();
  solve_cmd->add_option("--beta1", solve_opts.beta1, "Adam beta1")->capture_default_str();
  solve_cmd->add_option("--beta2", solve_opts.beta2, "Adam beta2")->capture_default_str();
  solve_cmd->add_option("--eps", solve_opts.eps, "Adam epsilon")->capture_default_str();
  solve_cmd->add_option("--seed", solve_opts.seed, "Random seed (random and printed if omitted)");
  solve_cmd->add_option("--trace", solve_opts.trace, "Write a step,t,cost,energy CSV here");
  solve_cmd->add_option("--trace-stride", solve_opts.trace_stride, "Record every k-th step")
      ->capture_default_str();
  solve_cmd->add_option("-o,--output", solve_opts.output, "Also write the result to this file");

  GenerateOptions gen_opts;
  auto* gen_cmd = app.add_subcommand("generate", "Write a generated instance file");
  gen_cmd->add_option("kind", gen_opts.kind, "Generator: pm1|uniform|wishart")
      ->required()->check(CLI::IsMember({"pm1", "uniform", "wishart"}));
  gen_cmd->add_option("--n", gen_opts.n, "Number of spins")->required();
  gen_cmd->add_option("--alpha", gen_opts.alpha, "Wishart column ratio m/n");
  gen_cmd->add_option("--seed", gen_opts.seed, "Random seed (random and printed if omitted)");
  gen_cmd->add_option("-o,--output", gen_opts.output, "Output path")->required();

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Run a JSON bench spec and write CSV reports");
  bench_cmd->add_option("spec", bench_opts.spec, "Bench spec file (JSON)")->required();
  bench_cmd->add_option("--workers", bench_opts.workers,
                        std::string("Trial threads (overrides ") + kWorkersEnv + " and the spec)");
  bench_cmd->add_option("-o,--output", bench_opts.output, "Output prefix (overrides the spec)");

  OracleOptions oracle_opts;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive ground-state search (n <= 24)");
  oracle_cmd->add_option("instance", oracle_opts.instance, "Instance file")->required();
  oracle_cmd->add_flag("--force", oracle_opts.force,
                       "Allow more than 24 spins (prints an estimated runtime first)");
  oracle_cmd->add_option("--workers", oracle_opts.workers, "Enumeration threads")
      ->capture_default_str();
  oracle_cmd->add_option("--max-print", oracle_opts.max_print, "Minimisers to print")
      ->capture_default_str();

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  if (storage.empty()) storage.emplace_back("lqa");
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_opts, out);
    if (*gen_cmd) return cmd_generate(gen_opts, out);
    if (*bench_cmd) return cmd_bench(bench_opts, out);
    if (*oracle_cmd) return cmd_oracle(oracle_opts, out, err);
  } catch (const UsageError& e) {
    err << "lqa: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "lqa: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace lqa::cli

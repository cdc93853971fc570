// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any selected criterion fails.
//
//   lqa_acceptance            run all criteria
//   lqa_acceptance 2 6        run criteria 2 and 6

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "lqa/bench.hpp"
#include "lqa/engine.hpp"
#include "lqa/format.hpp"
#include "lqa/generators.hpp"
#include "lqa/oracle.hpp"
#include "lqa/random.hpp"
#include "support/oracles.hpp"

namespace {

using namespace lqa;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

unsigned worker_count() { return std::max(1U, std::thread::hardware_concurrency()); }

// 1. Analytic gradient against central differences of an independently
//    written cost.
Outcome gradient_oracle() {
  constexpr double kStep = 1e-5;
  constexpr double kTolerance = 1e-5;
  constexpr int kCases = 100;
  const std::size_t sizes[] = {5, 50, 500};

  Rng rng(20240101);
  double worst = 0.0;
  for (int c = 0; c < kCases; ++c) {
    const std::size_t n = sizes[c % 3];
    IsingProblem p;
    switch (c % 4) {
      case 0: p = gen_uniform(n, rng.next_u64()); break;
      case 1: p = gen_random_pm1(n, rng.next_u64()); break;
      default: p = gen_wishart(n, 0.2 + rng.uniform01(), rng.next_u64()).problem; break;
    }
    std::vector<double> w(n);
    const double scale = 0.05 + 2.0 * rng.uniform01();
    for (auto& v : w) v = scale * rng.uniform_pm1();
    const double t = rng.uniform01();
    const double gamma = std::pow(10.0, -2.0 + 3.0 * rng.uniform01());

    const auto g = gradient(p, SolverState(w), t, gamma);
    const auto fd = testing::central_difference(p, w, t, gamma, kStep);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += (g[i] - fd[i]) * (g[i] - fd[i]);
      den += fd[i] * fd[i];
    }
    worst = std::max(worst, std::sqrt(num) / std::max(std::sqrt(den), 1e-300));
  }
  return {worst < kTolerance, "worst relative L2 error " + fmt(worst) + " over " +
                                  std::to_string(kCases) + " cases (tol " + fmt(kTolerance) + ")"};
}

// 2. Momentum annealing with restarts reaches the exhaustive ground state on
//    small fully connected instances.
Outcome small_exactness() {
  constexpr int kInstances = 50;
  constexpr int kRestarts = 20;
  constexpr double kRequired = 0.80;

  SolverConfig cfg;
  cfg.steps = 500;
  cfg.gamma = 0.1;
  cfg.optimizer = OptimizerKind::momentum;
  cfg.momentum = 0.99;
  cfg.step_size = 0.01;
  cfg.init_scale = 0.1;

  int hits = 0;
  for (int inst = 0; inst < kInstances; ++inst) {
    const IsingProblem p = gen_uniform(20, 1000 + inst);
    const double e0 = brute_force_ground(p, {.workers = worker_count()}).energy;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < kRestarts; ++r) {
      cfg.seed = static_cast<std::uint64_t>(inst) * 100 + r;
      best = std::min(best, solve(p, cfg).objective);
    }
    hits += best <= e0 + energy_tolerance(p);
  }
  const double fraction = static_cast<double>(hits) / kInstances;
  return {fraction >= kRequired, std::to_string(hits) + "/" + std::to_string(kInstances) +
                                     " instances at the ground state (need " + fmt(kRequired) + ")"};
}

// 3. From w = 0 plain gradient descent never moves; from a small random start
//    momentum 0.99 ends lower than momentum 0.
Outcome saddle_behaviour() {
  constexpr int kPairs = 50;

  bool frozen = true;
  for (std::size_t steps : {1U, 10U, 100U, 1000U}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const IsingProblem p = gen_uniform(20, 7000 + seed);
      SolverConfig cfg;
      cfg.steps = steps;
      cfg.optimizer = OptimizerKind::vanilla;
      cfg.step_size = 0.01;
      const auto r = anneal(p, cfg, std::vector<double>(20, 0.0));
      frozen = frozen && std::all_of(r.weights.begin(), r.weights.end(),
                                     [](double v) { return v == 0.0; });
      const auto g = gradient(p, SolverState(std::vector<double>(20, 0.0)), 0.5, cfg.gamma);
      frozen = frozen && std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; });
    }
  }

  double mean_plain = 0.0;
  double mean_momentum = 0.0;
  for (int k = 0; k < kPairs; ++k) {
    const IsingProblem p = gen_uniform(20, 5000 + k);
    SolverConfig cfg;
    cfg.steps = 500;
    cfg.gamma = 0.1;
    cfg.step_size = 0.01;
    cfg.optimizer = OptimizerKind::momentum;
    cfg.seed = static_cast<std::uint64_t>(k);
    cfg.momentum = 0.0;
    mean_plain += solve(p, cfg).final_cost / kPairs;
    cfg.momentum = 0.99;
    mean_momentum += solve(p, cfg).final_cost / kPairs;
  }
  return {frozen && mean_momentum < mean_plain,
          std::string("zero start ") + (frozen ? "stays at w = 0" : "MOVED") +
              "; mean final cost mu=0.99 " + fmt(mean_momentum) + " vs mu=0 " + fmt(mean_plain)};
}

// 4. Mean relative error over a Wishart alpha sweep rises then falls, and the
//    easiest point is solved exactly at least once.
Outcome wishart_easy_hard_easy() {
  constexpr double kExact = 1e-6;
  // Adjacent means may move against the trend by this many combined standard
  // errors and still count as flat.
  constexpr double kNoiseSigmas = 2.0;

  BenchSpec spec;
  spec.trials = 100;
  spec.workers = worker_count();
  spec.solver.steps = 500;
  spec.solver.gamma = 1.0;
  spec.solver.step_size = 2.0;
  spec.solver.optimizer = OptimizerKind::adam;
  spec.solver.seed = 4;
  for (int k = 0; k < 10; ++k) {
    InstanceSpec inst;
    inst.id = "alpha" + std::to_string(k);
    inst.generator = "wishart";
    inst.n = 500;
    inst.alpha = 0.2 + 0.2 * k;
    inst.seed = 300 + k;
    spec.instances.push_back(inst);
  }
  const auto reports = run_batch(spec);
  const auto summaries = summarize(reports);

  std::vector<double> mean, se, best;
  std::string curve;
  for (const auto& s : summaries) {
    mean.push_back(s.mean);
    se.push_back(s.std_dev / std::sqrt(static_cast<double>(std::max<std::size_t>(s.trials, 1))));
    best.push_back(s.min);
    curve += (curve.empty() ? "" : " ") + fmt(s.mean, 3);
  }
  const std::size_t m = mean.size();
  const std::size_t peak = std::max_element(mean.begin(), mean.end()) - mean.begin();
  auto noise = [&](std::size_t a, std::size_t b) { return kNoiseSigmas * (se[a] + se[b]); };

  bool shape = peak > 0 && peak + 1 < m;
  shape = shape && mean[peak] - mean[0] > noise(peak, 0);
  shape = shape && mean[peak] - mean[m - 1] > noise(peak, m - 1);
  for (std::size_t k = 0; k + 1 < m && shape; ++k) {
    const double d = mean[k + 1] - mean[k];
    if (k < peak && d < -noise(k, k + 1)) shape = false;
    if (k >= peak && d > noise(k, k + 1)) shape = false;
  }

  // Easiest alpha: smallest mean error, ties resolved towards larger alpha.
  std::size_t easiest = 0;
  for (std::size_t k = 1; k < m; ++k) {
    if (mean[k] <= mean[easiest]) easiest = k;
  }
  const bool exact = best[easiest] < kExact;
  return {shape && exact,
          std::string(shape ? "unimodal" : "NOT unimodal") + " (peak at alpha " +
              fmt(spec.instances[peak].alpha) + "); easiest alpha " +
              fmt(spec.instances[easiest].alpha) + " best error " + fmt(best[easiest]) +
              "; means [" + curve + "]"};
}

// 5. K2000-sized protocol: best-so-far cut never decreases and final cuts
//    cluster within 1% of the best one.
Outcome k2000_protocol() {
  constexpr double kSpread = 0.01;

  BenchSpec spec;
  spec.trials = 20;
  spec.workers = worker_count();
  spec.trace_stride = 100;
  spec.solver.steps = 5000;
  spec.solver.gamma = 0.1;
  spec.solver.step_size = 1.0;
  spec.solver.optimizer = OptimizerKind::adam;
  spec.solver.init_scale = 0.1;
  spec.solver.seed = 2000;
  InstanceSpec inst;
  inst.id = "k2000";
  inst.generator = "pm1";
  inst.n = 2000;
  inst.seed = 2000;
  spec.instances.push_back(inst);

  const auto reports = run_batch(spec);
  bool monotone = true;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    if (r.failed || !r.cut) {
      ++failed;
      continue;
    }
    double running = -std::numeric_limits<double>::infinity();
    double previous = running;
    for (const auto& [step, energy] : r.energy_trace) {
      running = std::max(running, (r.total_edge_weight - energy) / 2.0);
      monotone = monotone && running >= previous;
      previous = running;
    }
    monotone = monotone && running >= *r.cut;
    lo = std::min(lo, *r.cut);
    hi = std::max(hi, *r.cut);
  }
  const auto summary = summarize(reports);
  for (std::size_t k = 1; k < summary[0].best_cut.size(); ++k) {
    monotone = monotone && summary[0].best_cut[k].min >= summary[0].best_cut[k - 1].min &&
               summary[0].best_cut[k].mean >= summary[0].best_cut[k - 1].mean;
  }
  const double spread = (hi - lo) / hi;
  return {failed == 0 && monotone && spread <= kSpread,
          std::string(monotone ? "best-so-far monotone" : "best-so-far DECREASES") +
              "; final cuts " + fmt(lo, 7) + " .. " + fmt(hi, 7) + " spread " + fmt(spread) +
              " (tol " + fmt(kSpread) + "), failed trials " + std::to_string(failed)};
}

// 6. Exhaustive search on small Wishart instances returns exactly the planted
//    pair.
Outcome generator_soundness() {
  int checked = 0;
  int ok = 0;
  for (std::size_t n : {8U, 12U, 16U}) {
    for (double alpha : {0.5, 1.0}) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PlantedInstance inst = gen_wishart(n, alpha, 600 + seed);
        const GroundStates g = brute_force_ground(inst.problem, {.workers = worker_count()});
        std::vector<SpinConfig> expected = {inst.planted, inst.planted.flipped()};
        std::sort(expected.begin(), expected.end());
        ++checked;
        ok += g.minimisers == expected &&
              std::abs(g.energy - *inst.problem.ground_energy) <= energy_tolerance(inst.problem);
      }
    }
  }
  return {ok == checked, std::to_string(ok) + "/" + std::to_string(checked) +
                             " instances with minimisers exactly {planted, -planted}"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Drops the wall_ms column from a trials CSV.
std::string without_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  std::size_t column = std::string::npos;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (column == std::string::npos) {
      column = std::find(fields.begin(), fields.end(), "wall_ms") - fields.begin();
    }
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k != column) out += fields[k] + ',';
    }
    out += '\n';
  }
  return out;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lqa");
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

// 7. Repeated solve and bench runs with the same seed and flags produce
//    identical files, whatever the worker count.
Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "lqa_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto at = [&](const std::string& name) { return (dir / name).string(); };
  std::vector<std::string> problems;

  if (run_cli({"generate", "uniform", "--n", "60", "--seed", "5", "-o", at("u.txt")}) != 0 ||
      run_cli({"generate", "wishart", "--n", "60", "--alpha", "0.7", "--seed", "6", "-o",
               at("w.txt")}) != 0) {
    return {false, "could not generate instances"};
  }

  const std::vector<std::vector<std::string>> solve_flags = {
      {"--steps", "500", "--gamma", "0.1", "--eta", "1", "--momentum", "adam", "--seed", "7"},
      {"--steps", "300", "--momentum", "0.99", "--eta", "0.01", "--seed", "8"},
      {"--steps", "200", "--optimizer", "vanilla", "--eta", "0.05", "--seed", "9"}};
  int solves = 0;
  for (const auto& instance : {at("u.txt"), at("w.txt")}) {
    for (const auto& flags : solve_flags) {
      std::string outputs[2];
      for (int rep = 0; rep < 2; ++rep) {
        const std::string res = at("res" + std::to_string(rep));
        const std::string trace = at("trace" + std::to_string(rep));
        std::vector<std::string> args = {"solve", instance};
        args.insert(args.end(), flags.begin(), flags.end());
        args.insert(args.end(), {"-o", res, "--trace", trace, "--trace-stride", "25"});
        if (run_cli(args) != 0) return {false, "solve failed"};
        outputs[rep] = slurp(res) + "\n--\n" + slurp(trace);
      }
      ++solves;
      if (outputs[0] != outputs[1]) problems.push_back("solve " + flags.back());
    }
  }

  {
    std::ofstream spec(dir / "spec.json");
    spec << R"({"version": 1, "trials": 8, "trace_stride": 20, "oracle": true,
      "solver": {"steps": 200, "seed": 11},
      "instances": [{"id": "file", "file": "u.txt"},
                    {"id": "k", "generator": "pm1", "n": 50, "seed": 1},
                    {"id": "small", "generator": "uniform", "n": 14, "seed": 2}]})";
  }
  const std::string files[] = {"_trials.csv", "_summary.csv", "_trace_file.csv", "_trace_k.csv",
                               "_trace_small.csv"};
  std::vector<std::string> reference;
  int benches = 0;
  for (const char* workers : {"1", "1", "2", "4"}) {
    const std::string prefix = at(std::string("bench_w") + workers + "_" + std::to_string(benches));
    if (run_cli({"bench", at("spec.json"), "--workers", workers, "-o", prefix}) != 0) {
      return {false, "bench failed"};
    }
    std::vector<std::string> got;
    for (const auto& suffix : files) {
      const std::string text = slurp(prefix + suffix);
      got.push_back(suffix == files[0] ? without_wall_time(text) : text);
    }
    if (benches == 0) {
      reference = got;
    } else {
      for (std::size_t k = 0; k < got.size(); ++k) {
        if (got[k] != reference[k]) {
          problems.push_back(std::string("bench workers=") + workers + " " + files[k]);
        }
      }
    }
    ++benches;
  }
  fs::remove_all(dir);

  std::string detail = std::to_string(solves) + " solve configurations repeated, " +
                       std::to_string(benches) + " bench runs at 1/1/2/4 workers";
  for (const auto& p : problems) detail += "; differs: " + p;
  return {problems.empty(), detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "gradient matches central differences", gradient_oracle},
      {2, "exact ground states on n=20 instances", small_exactness},
      {3, "saddle at w=0 and momentum escape", saddle_behaviour},
      {4, "Wishart easy-hard-easy shape", wishart_easy_hard_easy},
      {5, "K2000-scale cut protocol", k2000_protocol},
      {6, "Wishart planted pair is the unique optimum", generator_soundness},
      {7, "deterministic solve and bench output", determinism},
  };

  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

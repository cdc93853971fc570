// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lqa/engine.hpp"
#include "lqa/ising.hpp"

namespace lqa {

// Where an instance comes from: a file in the text format, or a generator
// ("pm1", "uniform", "wishart") with parameters.
struct InstanceSpec {
  std::string id;
  std::filesystem::path file;
  std::string generator;
  std::size_t n = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> step_size;  // per-instance override of solver.step_size
  std::optional<bool> maxcut;       // defaults to true for pm1, false otherwise
};

enum class TrialMode {
  shared_instance,     // every trial anneals the same instance from its own init
  instance_per_trial,  // generator sources draw a fresh instance per trial
};

struct BenchSpec {
  std::vector<InstanceSpec> instances;
  std::size_t trials = 1;
  SolverConfig solver;
  std::size_t trace_stride = 0;
  TrialMode mode = TrialMode::shared_instance;
  bool use_oracle = false;  // fill a missing ground energy by brute force (n <= 24)
  unsigned workers = 1;
  std::filesystem::path output;  // prefix for the CSV files

  void validate() const;
};

inline constexpr int kBenchSpecVersion = 1;

// Parses the JSON bench configuration. Relative paths inside it are resolved
// against `base_dir`.
[[nodiscard]] BenchSpec parse_bench_spec(std::istream& in,
                                         const std::filesystem::path& base_dir = {});
[[nodiscard]] BenchSpec load_bench_spec(const std::filesystem::path& path);

struct TrialReport {
  std::string instance;
  std::size_t trial = 0;
  std::size_t steps = 0;
  double final_energy = 0.0;
  std::optional<double> relative_error;  // present iff the ground energy is known
  std::optional<double> cut;             // present for Max-Cut instances
  double wall_ms = 0.0;
  bool failed = false;
  std::string error;
  std::optional<double> ground_energy;
  // (step, objective of sign(w)) at the trace stride, empty when tracing is off.
  std::vector<std::pair<std::size_t, double>> energy_trace;
  double total_edge_weight = 0.0;  // Max-Cut only
};

// |(C - C0) / C0|, or |C - C0| when C0 == 0.
[[nodiscard]] double relative_error(double value, double ground);

// Runs every (instance, trial) pair across spec.workers threads. The seed of
// trial k on instance i is trial_seed(solver.seed, i, k). Reports come back in
// (instance, trial) order whatever the worker count. Per-trial failures are
// recorded, not thrown; spec errors throw before any trial starts.
[[nodiscard]] std::vector<TrialReport> run_batch(const BenchSpec& spec);

struct TraceAggregate {
  std::size_t step = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct InstanceSummary {
  std::string instance;
  std::string metric;  // "relative_error", "cut" or "energy"
  std::size_t trials = 0;
  std::size_t failed = 0;
  double mean = 0.0;
  double std_dev = 0.0;  // population standard deviation
  double min = 0.0;
  double max = 0.0;
  std::optional<double> fraction_at_optimum;
  std::vector<TraceAggregate> best_energy;  // best-so-far objective per traced step
  std::vector<TraceAggregate> best_cut;     // Max-Cut only
};

// Groups reports by instance (first-appearance order). Failed trials are
// counted but excluded from the statistics.
[[nodiscard]] std::vector<InstanceSummary> summarize(const std::vector<TrialReport>& reports);

struct Moments {
  double mean = 0.0;
  double std_dev = 0.0;
  double min = 0.0;
  double max = 0.0;
};
// Single-pass (Welford) statistics of a non-empty sample.
[[nodiscard]] Moments compute_moments(const std::vector<double>& values);

void write_trials_csv(std::ostream& out, const std::vector<TrialReport>& reports);
void write_summary_csv(std::ostream& out, const std::vector<InstanceSummary>& summaries);
void write_trace_csv(std::ostream& out, const InstanceSummary& summary);

struct BenchOutputs {
  std::filesystem::path trials;
  std::filesystem::path summary;
  std::vector<std::filesystem::path> traces;
};

// Writes <prefix>_trials.csv, <prefix>_summary.csv and, when traces exist,
// <prefix>_trace_<instance>.csv, each through write-then-rename.
BenchOutputs write_bench_outputs(const std::filesystem::path& prefix,
                                 const std::vector<TrialReport>& reports,
                                 const std::vector<InstanceSummary>& summaries);

}  // namespace lqa

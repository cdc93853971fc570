// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lqa/ising.hpp"

namespace lqa {

enum class OptimizerKind { vanilla, momentum, adam };

[[nodiscard]] std::string_view to_string(OptimizerKind kind) noexcept;
// Accepts "vanilla", "momentum", "adam". Throws std::invalid_argument.
[[nodiscard]] OptimizerKind parse_optimizer(std::string_view name);

// Maps step index i in [0, total] to the annealing parameter t in [0, 1].
using Schedule = std::function<double(std::size_t step, std::size_t total)>;

// t = i / N.
[[nodiscard]] double linear_schedule(std::size_t step, std::size_t total) noexcept;

struct SolverConfig {
  std::size_t steps = 1000;
  double gamma = 0.1;
  double step_size = 1.0;
  double momentum = 0.99;
  OptimizerKind optimizer = OptimizerKind::adam;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double init_scale = 0.1;
  std::uint64_t seed = 0;
  Schedule schedule;              // empty means linear_schedule
  std::size_t trace_stride = 0;   // 0 disables tracing

  // Throws std::invalid_argument naming the first violated constraint,
  // including a non-monotone or out-of-range schedule.
  void validate() const;
  [[nodiscard]] double time_at(std::size_t step) const;
};

// Optimisation state of one trial. The caches z = sin(pi/2 tanh w),
// x = cos(pi/2 tanh w) and slope = 1 - tanh^2 w are recomputed from w by
// refresh(); every updater calls it before returning.
struct SolverState {
  std::vector<double> w;
  std::vector<double> velocity;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::vector<double> z;
  std::vector<double> x;
  std::vector<double> slope;
  std::size_t step_index = 0;  // updates applied so far

  SolverState() = default;
  explicit SolverState(std::vector<double> w0);

  [[nodiscard]] std::size_t size() const noexcept { return w.size(); }
  void refresh();
};

// t*gamma*z^T J z - (1-t)*sum(x). Requires an unbiased problem.
[[nodiscard]] double cost(const IsingProblem& p, const SolverState& state, double t, double gamma);

// Analytic gradient of cost() with respect to w:
//   (pi/2) [t*gamma*(2 J z) o x + (1-t) z] o (1 - tanh^2 w)
[[nodiscard]] std::vector<double> gradient(const IsingProblem& p, const SolverState& state,
                                           double t, double gamma);

// Fused cost and gradient sharing one J z product. `jz` is scratch space of
// length n. Returns the cost.
double evaluate(const IsingProblem& p, const SolverState& state, double t, double gamma,
                std::span<double> grad, std::span<double> jz);

void update_vanilla(SolverState& state, std::span<const double> grad, double step_size);
void update_momentum(SolverState& state, std::span<const double> grad, double step_size,
                     double momentum);
void update_adam(SolverState& state, std::span<const double> grad, double step_size,
                 double beta1, double beta2, double eps);

// init_scale * u, u_i uniform on [-1, 1).
[[nodiscard]] std::vector<double> init_weights(std::size_t n, double init_scale,
                                               std::uint64_t seed);

struct TraceRecord {
  std::size_t step;
  double t;
  double cost;    // cost(t, w) after the update at this step
  double energy;  // objective of sign(w) after the update
};

struct TrialTrace {
  std::vector<TraceRecord> records;
  void write_csv(std::ostream& out) const;  // step,t,cost,energy
};

struct AnnealResult {
  SpinConfig spins;
  std::vector<double> weights;
  double final_cost = 0.0;
  TrialTrace trace;
};

// Raised when the cost or gradient stops being finite.
class NonFiniteError : public std::runtime_error {
 public:
  NonFiniteError(std::size_t step, const std::string& what);
  [[nodiscard]] std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Runs steps i = 1..N with t = schedule(i): one gradient evaluation and one
// optimizer update per step. Returns sign(w). Requires an unbiased problem.
[[nodiscard]] AnnealResult anneal(const IsingProblem& p, const SolverConfig& cfg,
                                  std::span<const double> w0);

struct SolveResult {
  SpinConfig spins;
  double objective = 0.0;
  double final_cost = 0.0;
  TrialTrace trace;
};

// Convenience front end: absorbs a bias into an ancilla if present, draws
// initial weights from cfg.seed, anneals and reads out the original spins.
[[nodiscard]] SolveResult solve(const IsingProblem& p, const SolverConfig& cfg);

}  // namespace lqa

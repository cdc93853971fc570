// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqa/engine.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "lqa/format.hpp"
#include "lqa/random.hpp"

namespace lqa {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void require_unbiased(const IsingProblem& p) {
  if (p.has_bias()) {
    throw std::invalid_argument("problem carries a bias; absorb it into an ancilla first");
  }
}

void require_size(const IsingProblem& p, const SolverState& state) {
  if (state.size() != p.size()) {
    throw std::invalid_argument("state has " + std::to_string(state.size()) +
                                " weights for a " + std::to_string(p.size()) + "-spin problem");
  }
}

}  // namespace

std::string_view to_string(OptimizerKind kind) noexcept {
  switch (kind) {
    case OptimizerKind::vanilla: return "vanilla";
    case OptimizerKind::momentum: return "momentum";
    case OptimizerKind::adam: return "adam";
  }
  return "unknown";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "vanilla") return OptimizerKind::vanilla;
  if (name == "momentum") return OptimizerKind::momentum;
  if (name == "adam") return OptimizerKind::adam;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) +
                              "' (expected vanilla, momentum or adam)");
}

double linear_schedule(std::size_t step, std::size_t total) noexcept {
  return static_cast<double>(step) / static_cast<double>(total);
}

double SolverConfig::time_at(std::size_t step) const {
  return schedule ? schedule(step, steps) : linear_schedule(step, steps);
}

void SolverConfig::validate() const {
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be > 0");
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw std::invalid_argument("step size must be > 0");
  }
  if (!(momentum >= 0.0 && momentum <= 1.0)) {
    throw std::invalid_argument("momentum must lie in [0, 1]");
  }
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw std::invalid_argument("Adam betas must lie in [0, 1)");
  }
  if (!(adam_eps >= 0.0)) throw std::invalid_argument("Adam epsilon must be >= 0");
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    throw std::invalid_argument("init scale must be >= 0");
  }
  if (schedule) {
    double previous = schedule(0, steps);
    if (!(previous >= 0.0)) throw std::invalid_argument("schedule(0) must be >= 0");
    for (std::size_t i = 1; i <= steps; ++i) {
      const double t = schedule(i, steps);
      if (!(t >= previous)) {
        throw std::invalid_argument("schedule decreases at step " + std::to_string(i));
      }
      previous = t;
    }
    if (!(previous <= 1.0)) throw std::invalid_argument("schedule(N) must be <= 1");
  }
}

SolverState::SolverState(std::vector<double> w0)
    : w(std::move(w0)),
      velocity(w.size(), 0.0),
      first_moment(w.size(), 0.0),
      second_moment(w.size(), 0.0),
      z(w.size()),
      x(w.size()),
      slope(w.size()) {
  refresh();
}

void SolverState::refresh() {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double th = std::tanh(w[i]);
    const double theta = kHalfPi * th;
    z[i] = std::sin(theta);
    x[i] = std::cos(theta);
    slope[i] = 1.0 - th * th;
  }
}

double evaluate(const IsingProblem& p, const SolverState& state, double t, double gamma,
                std::span<double> grad, std::span<double> jz) {
  require_size(p, state);
  const std::size_t n = state.size();
  p.couplings.multiply(state.z, jz);

  const double field = t * gamma;
  const double transverse = 1.0 - t;
  double quad = 0.0;
  double xsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    quad += state.z[i] * jz[i];
    xsum += state.x[i];
    grad[i] = kHalfPi * (field * 2.0 * jz[i] * state.x[i] + transverse * state.z[i]) *
              state.slope[i];
  }
  return field * quad - transverse * xsum;
}

double cost(const IsingProblem& p, const SolverState& state, double t, double gamma) {
  require_unbiased(p);
  std::vector<double> grad(state.size()), jz(state.size());
  return evaluate(p, state, t, gamma, grad, jz);
}

std::vector<double> gradient(const IsingProblem& p, const SolverState& state, double t,
                             double gamma) {
  require_unbiased(p);
  std::vector<double> grad(state.size()), jz(state.size());
  evaluate(p, state, t, gamma, grad, jz);
  return grad;
}

void update_vanilla(SolverState& state, std::span<const double> grad, double step_size) {
  for (std::size_t i = 0; i < state.size(); ++i) state.w[i] -= step_size * grad[i];
  ++state.step_index;
  state.refresh();
}

void update_momentum(SolverState& state, std::span<const double> grad, double step_size,
                     double momentum) {
  for (std::size_t i = 0; i < state.size(); ++i) {
    state.velocity[i] = momentum * state.velocity[i] - step_size * grad[i];
    state.w[i] += state.velocity[i];
  }
  ++state.step_index;
  state.refresh();
}

void update_adam(SolverState& state, std::span<const double> grad, double step_size,
                 double beta1, double beta2, double eps) {
  ++state.step_index;
  const double k = static_cast<double>(state.step_index);
  const double correction1 = 1.0 - std::pow(beta1, k);
  const double correction2 = 1.0 - std::pow(beta2, k);
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double g = grad[i];
    state.first_moment[i] = beta1 * state.first_moment[i] + (1.0 - beta1) * g;
    state.second_moment[i] = beta2 * state.second_moment[i] + (1.0 - beta2) * g * g;
    const double m_hat = state.first_moment[i] / correction1;
    const double v_hat = state.second_moment[i] / correction2;
    state.w[i] -= step_size * m_hat / (std::sqrt(v_hat) + eps);
  }
  state.refresh();
}

std::vector<double> init_weights(std::size_t n, double init_scale, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(n);
  for (auto& v : w) v = init_scale * rng.uniform_pm1();
  return w;
}

void TrialTrace::write_csv(std::ostream& out) const {
  out << "step,t,cost,energy\n";
  for (const auto& r : records) {
    out << r.step << ',' << format_double(r.t) << ',' << format_double(r.cost) << ','
        << format_double(r.energy) << '\n';
  }
}

NonFiniteError::NonFiniteError(std::size_t step, const std::string& what)
    : std::runtime_error("non-finite " + what + " at step " + std::to_string(step)),
      step_(step) {}

AnnealResult anneal(const IsingProblem& p, const SolverConfig& cfg, std::span<const double> w0) {
  require_unbiased(p);
  cfg.validate();
  if (w0.size() != p.size()) {
    throw std::invalid_argument("initial weights have " + std::to_string(w0.size()) +
                                " entries for a " + std::to_string(p.size()) + "-spin problem");
  }
  if (!all_finite(w0)) throw std::invalid_argument("initial weights are not finite");

  const std::size_t n = p.size();
  SolverState state(std::vector<double>(w0.begin(), w0.end()));
  std::vector<double> grad(n), jz(n);
  AnnealResult result;

  for (std::size_t i = 1; i <= cfg.steps; ++i) {
    const double t = cfg.time_at(i);
    const double c = evaluate(p, state, t, cfg.gamma, grad, jz);
    if (!std::isfinite(c)) throw NonFiniteError(i, "cost");
    if (!all_finite(grad)) throw NonFiniteError(i, "gradient");

    switch (cfg.optimizer) {
      case OptimizerKind::vanilla:
        update_vanilla(state, grad, cfg.step_size);
        break;
      case OptimizerKind::momentum:
        update_momentum(state, grad, cfg.step_size, cfg.momentum);
        break;
      case OptimizerKind::adam:
        update_adam(state, grad, cfg.step_size, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps);
        break;
    }
    if (!all_finite(state.w)) throw NonFiniteError(i, "weights");

    if (cfg.trace_stride > 0 && (i % cfg.trace_stride == 0 || i == cfg.steps)) {
      const double after = evaluate(p, state, t, cfg.gamma, grad, jz);
      result.trace.records.push_back(
          {i, t, after, objective(p, SpinConfig::sign_of(state.w))});
    }
  }

  result.final_cost = evaluate(p, state, cfg.time_at(cfg.steps), cfg.gamma, grad, jz);
  result.spins = SpinConfig::sign_of(state.w);
  result.weights = std::move(state.w);
  return result;
}

SolveResult solve(const IsingProblem& p, const SolverConfig& cfg) {
  SolveResult out;
  if (p.has_bias()) {
    const IsingProblem augmented = absorb_bias(p);
    auto annealed = anneal(augmented, cfg, init_weights(augmented.size(), cfg.init_scale, cfg.seed));
    out.spins = strip_ancilla(annealed.spins);
    out.final_cost = annealed.final_cost;
    out.trace = std::move(annealed.trace);
  } else {
    auto annealed = anneal(p, cfg, init_weights(p.size(), cfg.init_scale, cfg.seed));
    out.spins = std::move(annealed.spins);
    out.final_cost = annealed.final_cost;
    out.trace = std::move(annealed.trace);
  }
  out.objective = objective(p, out.spins);
  return out;
}

}  // namespace lqa

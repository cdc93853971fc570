// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqa/ising.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lqa {

SpinConfig::SpinConfig(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    if (spins_[i] != 1 && spins_[i] != -1) {
      throw std::invalid_argument("spin " + std::to_string(i) + " is not +1 or -1");
    }
  }
}

SpinConfig SpinConfig::from_mask(std::uint64_t mask, std::size_t n) {
  SpinConfig s(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1U) s.spins_[i] = -1;
  }
  return s;
}

SpinConfig SpinConfig::sign_of(std::span<const double> w) {
  SpinConfig s(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0.0) s.spins_[i] = -1;
  }
  return s;
}

SpinConfig SpinConfig::flipped() const {
  SpinConfig s = *this;
  for (auto& v : s.spins_) v = static_cast<std::int8_t>(-v);
  return s;
}

std::vector<double> SpinConfig::as_doubles() const {
  return {spins_.begin(), spins_.end()};
}

std::string SpinConfig::to_string() const {
  std::string out;
  out.reserve(spins_.size());
  for (auto v : spins_) out.push_back(v > 0 ? '+' : '-');
  return out;
}

double QuboProblem::evaluate(std::span<const std::uint8_t> x) const {
  const std::size_t n = size();
  if (x.size() != n || linear.size() != n) {
    throw std::invalid_argument("QUBO dimension mismatch");
  }
  double value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!x[i]) continue;
    value += linear[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j]) value += quadratic(i, j);
    }
  }
  return value;
}

IsingProblem::IsingProblem(CouplingMatrix j, std::vector<double> b, std::optional<double> ground,
                           double off)
    : couplings(std::move(j)), bias(std::move(b)), ground_energy(ground), offset(off) {
  if (!bias.empty() && bias.size() != couplings.size()) {
    throw std::invalid_argument("bias has " + std::to_string(bias.size()) +
                                " entries for a " + std::to_string(couplings.size()) +
                                "-spin problem");
  }
}

bool IsingProblem::has_bias() const noexcept {
  return std::any_of(bias.begin(), bias.end(), [](double v) { return v != 0.0; });
}

IsingProblem qubo_to_ising(const QuboProblem& q) {
  const std::size_t n = q.size();
  if (q.linear.size() != n) {
    throw std::invalid_argument("QUBO linear term has wrong length");
  }
  // CouplingMatrix already guarantees symmetry and a zero diagonal.
  std::vector<double> j(q.quadratic.data().begin(), q.quadratic.data().end());
  for (auto& v : j) v /= 4.0;

  std::vector<double> b(n);
  double offset = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (double v : q.quadratic.row(i)) row_sum += v;
    b[i] = (q.linear[i] + row_sum) / 2.0;
    offset += row_sum / 4.0 + q.linear[i] / 2.0;
  }
  return IsingProblem(CouplingMatrix::from_dense(n, std::move(j)), std::move(b), std::nullopt,
                      offset);
}

IsingProblem absorb_bias(const IsingProblem& p) {
  const std::size_t n = p.size();
  CouplingMatrix j(n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) j.set(r, c, p.couplings(r, c));
    if (!p.bias.empty()) j.set(r, n, p.bias[r] / 2.0);
  }
  return IsingProblem(std::move(j), {}, p.ground_energy, p.offset);
}

SpinConfig strip_ancilla(const SpinConfig& with_ancilla) {
  if (with_ancilla.size() == 0) {
    throw std::invalid_argument("configuration has no ancilla spin");
  }
  const std::size_t n = with_ancilla.size() - 1;
  const bool flip = with_ancilla[n] < 0;
  std::vector<std::int8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::int8_t>(flip ? -with_ancilla[i] : with_ancilla[i]);
  }
  return SpinConfig(std::move(out));
}

namespace {

double quadratic_form(const CouplingMatrix& j, const SpinConfig& s) {
  if (s.size() != j.size()) {
    throw std::invalid_argument("spin configuration has " + std::to_string(s.size()) +
                                " entries for a " + std::to_string(j.size()) + "-spin problem");
  }
  const std::vector<double> sd = s.as_doubles();
  double total = 0.0;
  for (std::size_t i = 0; i < sd.size(); ++i) total += sd[i] * dot(j.row(i), sd);
  return total;
}

}  // namespace

double energy(const IsingProblem& p, const SpinConfig& s) {
  if (p.has_bias()) {
    throw std::invalid_argument("energy() needs an unbiased problem; call absorb_bias first");
  }
  return quadratic_form(p.couplings, s);
}

double objective(const IsingProblem& p, const SpinConfig& s) {
  double value = quadratic_form(p.couplings, s) + p.offset;
  for (std::size_t i = 0; i < p.bias.size(); ++i) value += p.bias[i] * s[i];
  return value;
}

double cut_value(const IsingProblem& p, const SpinConfig& s, double total_edge_weight) {
  return (total_edge_weight - energy(p, s)) / 2.0;
}

double total_edge_weight(const IsingProblem& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) total += 2.0 * p.couplings(i, j);
  }
  return total;
}

double energy_tolerance(const IsingProblem& p) noexcept {
  double scale = p.couplings.abs_sum();
  for (double v : p.bias) scale += std::abs(v);
  return 1e-9 * std::max(1.0, scale);
}

}  // namespace lqa

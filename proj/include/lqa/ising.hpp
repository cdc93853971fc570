// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lqa/coupling_matrix.hpp"

namespace lqa {

// Vector of +1/-1 spins.
class SpinConfig {
 public:
  SpinConfig() = default;
  // All spins +1.
  explicit SpinConfig(std::size_t n) : spins_(n, 1) {}
  // Throws std::invalid_argument if any entry is not exactly +1 or -1.
  explicit SpinConfig(std::vector<std::int8_t> spins);

  // Spin i is -1 iff bit i of mask is set.
  static SpinConfig from_mask(std::uint64_t mask, std::size_t n);

  // sign(w) with sign(0) = +1.
  static SpinConfig sign_of(std::span<const double> w);

  [[nodiscard]] std::size_t size() const noexcept { return spins_.size(); }
  [[nodiscard]] int operator[](std::size_t i) const noexcept { return spins_[i]; }
  void flip(std::size_t i) noexcept { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }
  [[nodiscard]] SpinConfig flipped() const;
  [[nodiscard]] std::span<const std::int8_t> values() const noexcept { return spins_; }
  [[nodiscard]] std::vector<double> as_doubles() const;

  // "+-+-" style rendering.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;
  friend auto operator<=>(const SpinConfig&, const SpinConfig&) = default;

 private:
  std::vector<std::int8_t> spins_;
};

// min x^T Q x + x^T a over x in {0,1}^n.
struct QuboProblem {
  CouplingMatrix quadratic;
  std::vector<double> linear;

  [[nodiscard]] std::size_t size() const noexcept { return quadratic.size(); }
  // Throws on a length mismatch between Q and a.
  [[nodiscard]] double evaluate(std::span<const std::uint8_t> x) const;
};

// min s^T J s + s^T b + offset over s in {+1,-1}^n.
struct IsingProblem {
  CouplingMatrix couplings;
  std::vector<double> bias;  // empty or length n
  std::optional<double> ground_energy;
  double offset = 0.0;

  IsingProblem() = default;
  explicit IsingProblem(CouplingMatrix j, std::vector<double> b = {},
                        std::optional<double> ground = std::nullopt, double off = 0.0);

  [[nodiscard]] std::size_t size() const noexcept { return couplings.size(); }
  [[nodiscard]] bool has_bias() const noexcept;
};

[[nodiscard]] IsingProblem qubo_to_ising(const QuboProblem& q);

// Appends an ancilla spin (index n) carrying the bias as couplings b_i/2.
// With the ancilla at +1 the result reproduces s^T J s + s^T b.
[[nodiscard]] IsingProblem absorb_bias(const IsingProblem& p);

// Normalises a configuration of an absorb_bias() problem so the ancilla reads
// +1, then drops the ancilla.
[[nodiscard]] SpinConfig strip_ancilla(const SpinConfig& with_ancilla);

// s^T J s. Requires an unbiased problem.
[[nodiscard]] double energy(const IsingProblem& p, const SpinConfig& s);

// s^T J s + s^T b + offset; the quantity ground_energy refers to.
[[nodiscard]] double objective(const IsingProblem& p, const SpinConfig& s);

// Max-Cut convention: J[i][j] = w_ij / 2 on both triangles, so
// s^T J s = sum_{i<j} w_ij s_i s_j and cut = (W_total - s^T J s) / 2.
[[nodiscard]] double cut_value(const IsingProblem& p, const SpinConfig& s,
                               double total_edge_weight);

// W_total = sum_{i<j} w_ij = sum_{i<j} 2 J[i][j] under the convention above.
[[nodiscard]] double total_edge_weight(const IsingProblem& p);

// Absolute tolerance for energy equality on p: 1e-9 scaled by the 1-norm.
[[nodiscard]] double energy_tolerance(const IsingProblem& p) noexcept;

}  // namespace lqa

// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lqa {

// Dense symmetric coupling matrix with zero diagonal, stored row-major with
// both triangles populated.
class CouplingMatrix {
 public:
  CouplingMatrix() = default;
  explicit CouplingMatrix(std::size_t n);

  // Takes ownership of an n*n row-major buffer. Throws std::invalid_argument
  // unless the buffer is symmetric with a zero diagonal.
  static CouplingMatrix from_dense(std::size_t n, std::vector<double> values);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * n_ + j];
  }

  // Writes J[i][j] and J[j][i]. Rejects i == j.
  void set(std::size_t i, std::size_t j, double value);

  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * n_, n_};
  }
  [[nodiscard]] std::span<const double> data() const noexcept { return values_; }

  // out = J * x. The reduction order per row is fixed, so the result is a
  // deterministic function of the inputs.
  void multiply(std::span<const double> x, std::span<double> out) const;

  // Entrywise 1-norm, sum |J[i][j]|; bounds |s^T J s| and scales tolerances.
  [[nodiscard]] double abs_sum() const noexcept;

  friend bool operator==(const CouplingMatrix&, const CouplingMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

// Dot product with the same fixed 8-way reduction order used by multiply().
[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace lqa

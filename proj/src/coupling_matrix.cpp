// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqa/coupling_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lqa {

CouplingMatrix::CouplingMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

CouplingMatrix CouplingMatrix::from_dense(std::size_t n, std::vector<double> values) {
  if (values.size() != n * n) {
    throw std::invalid_argument("coupling buffer has " + std::to_string(values.size()) +
                                " entries, expected " + std::to_string(n * n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i * n + i] != 0.0) {
      throw std::invalid_argument("nonzero diagonal entry at " + std::to_string(i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (values[i * n + j] != values[j * n + i]) {
        throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
      }
    }
  }
  CouplingMatrix m;
  m.n_ = n;
  m.values_ = std::move(values);
  return m;
}

void CouplingMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) {
    throw std::out_of_range("coupling index out of range");
  }
  if (i == j) {
    throw std::invalid_argument("self-coupling at " + std::to_string(i));
  }
  values_[i * n_ + j] = value;
  values_[j * n_ + i] = value;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size();
  double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    for (std::size_t l = 0; l < 8; ++l) acc[l] += a[k + l] * b[k + l];
  }
  for (std::size_t l = 0; k < n; ++k, ++l) acc[l] += a[k] * b[k];
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
}

void CouplingMatrix::multiply(std::span<const double> x, std::span<double> out) const {
  if (x.size() != n_ || out.size() != n_) {
    throw std::invalid_argument("matrix-vector dimension mismatch");
  }
  for (std::size_t i = 0; i < n_; ++i) out[i] = dot(row(i), x);
}

double CouplingMatrix::abs_sum() const noexcept {
  double s = 0.0;
  for (double v : values_) s += std::abs(v);
  return s;
}

}  // namespace lqa

// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include "lqa/ising.hpp"

namespace lqa {

struct PlantedInstance {
  IsingProblem problem;  // ground_energy set to the planted energy
  SpinConfig planted;
  double alpha = 0.0;
  std::uint64_t seed = 0;
};

// Fully connected n-spin problem with J[i][j] = J[j][i] drawn uniformly from
// {-1, +1}, zero diagonal and no bias (the K2000 family for n = 2000).
[[nodiscard]] IsingProblem gen_random_pm1(std::size_t n, std::uint64_t seed);

// Wishart planted ensemble. Draws a planted t in {-1,+1}^n and an n x m
// Gaussian matrix W, m = round(alpha * n), whose columns are projected onto
// the hyperplane orthogonal to t. J = W W^T / n with the diagonal removed, so
//   s^T J s = |W^T s|^2 / n - trace(W W^T) / n,
// which is minimised exactly where W^T s = 0, i.e. at s = +-t.
[[nodiscard]] PlantedInstance gen_wishart(std::size_t n, double alpha, std::uint64_t seed);

// Fully connected problem with J[i][j] uniform on [-1, 1).
[[nodiscard]] IsingProblem gen_uniform(std::size_t n, std::uint64_t seed);

}  // namespace lqa

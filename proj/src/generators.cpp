// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqa/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lqa/random.hpp"

namespace lqa {

IsingProblem gen_random_pm1(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("pm1 generator needs n >= 2");
  Rng rng(seed);
  CouplingMatrix j(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) j.set(r, c, rng.random_sign());
  }
  return IsingProblem(std::move(j));
}

IsingProblem gen_uniform(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("uniform generator needs n >= 2");
  Rng rng(seed);
  CouplingMatrix j(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) j.set(r, c, rng.uniform_pm1());
  }
  return IsingProblem(std::move(j));
}

PlantedInstance gen_wishart(std::size_t n, double alpha, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("Wishart generator needs n >= 2");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("Wishart alpha must be > 0");
  }
  const auto m = static_cast<std::size_t>(std::llround(alpha * static_cast<double>(n)));
  if (m == 0) {
    throw std::invalid_argument("alpha * n rounds to zero columns (alpha = " +
                                std::to_string(alpha) + ", n = " + std::to_string(n) + ")");
  }

  Rng rng(seed);
  std::vector<std::int8_t> t(n);
  for (auto& v : t) v = static_cast<std::int8_t>(rng.random_sign());

  // W stored row-major (n x m); each column is a projected Gaussian draw.
  std::vector<double> w(n * m);
  std::vector<double> column(n);
  for (std::size_t c = 0; c < m; ++c) {
    double overlap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = rng.normal();
      overlap += column[i] * t[i];
    }
    const double shift = overlap / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) w[i * m + c] = column[i] - shift * t[i];
  }

  const double scale = 1.0 / static_cast<double>(n);
  CouplingMatrix j(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double* wr = w.data() + r * m;
    for (std::size_t c = r + 1; c < n; ++c) {
      const double* wc = w.data() + c * m;
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) acc += wr[k] * wc[k];
      j.set(r, c, acc * scale);
    }
  }

  PlantedInstance out;
  out.planted = SpinConfig(std::move(t));
  out.problem = IsingProblem(std::move(j));
  out.problem.ground_energy = energy(out.problem, out.planted);
  out.alpha = alpha;
  out.seed = seed;
  return out;
}

}  // namespace lqa

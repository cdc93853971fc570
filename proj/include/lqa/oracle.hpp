// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "lqa/ising.hpp"

namespace lqa {

inline constexpr std::size_t kBruteForceSpinCap = 24;

struct BruteForceOptions {
  unsigned workers = 1;
  bool allow_over_cap = false;  // lifts the 24-spin cap (hard limit 48)
};

struct GroundStates {
  double energy = 0.0;  // min over s of objective(p, s)
  // Every configuration within energy_tolerance(p) of the minimum, sorted
  // lexicographically with -1 < +1.
  std::vector<SpinConfig> minimisers;
};

// Exhaustive Gray-code enumeration of all 2^n configurations with O(n)
// incremental local-field updates per step. Throws std::invalid_argument
// when n exceeds the cap and the override is not set.
[[nodiscard]] GroundStates brute_force_ground(const IsingProblem& p,
                                              const BruteForceOptions& options = {});

// Rough single-thread runtime of brute_force_ground for n spins.
[[nodiscard]] double brute_force_estimate_seconds(std::size_t n) noexcept;

// Objective change from flipping each spin: -4 s_i h_i - 2 s_i b_i with
// local field h = J s.
[[nodiscard]] std::vector<double> flip_deltas(const IsingProblem& p, const SpinConfig& s);

// True iff no single flip lowers the objective by more than energy_tolerance(p).
[[nodiscard]] bool single_flip_stable(const IsingProblem& p, const SpinConfig& s);

}  // namespace lqa

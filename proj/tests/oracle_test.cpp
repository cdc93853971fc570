// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lqa/generators.hpp"
#include "lqa/oracle.hpp"
#include "lqa/random.hpp"
#include "support/oracles.hpp"

namespace lqa {
namespace {

// Naive full enumeration of gen_uniform(14, 2024) and gen_random_pm1(14, 2024).
constexpr double kFrozenUniform14 = -36.542625129226728;
constexpr double kFrozenPm114 = -70.0;

std::vector<SpinConfig> configs(const std::vector<std::uint64_t>& masks, std::size_t n) {
  std::vector<SpinConfig> out;
  for (auto m : masks) out.push_back(SpinConfig::from_mask(m, n));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(BruteForce, TwoSpinExamples) {
  const IsingProblem anti(CouplingMatrix::from_dense(2, {0, 1, 1, 0}));
  auto g = brute_force_ground(anti);
  EXPECT_EQ(g.energy, -2.0);
  ASSERT_EQ(g.minimisers.size(), 2U);
  EXPECT_EQ(g.minimisers[0].to_string(), "-+");
  EXPECT_EQ(g.minimisers[1].to_string(), "+-");

  const IsingProblem ferro(CouplingMatrix::from_dense(2, {0, -1, -1, 0}));
  g = brute_force_ground(ferro);
  EXPECT_EQ(g.energy, -2.0);
  ASSERT_EQ(g.minimisers.size(), 2U);
  EXPECT_EQ(g.minimisers[0].to_string(), "--");
  EXPECT_EQ(g.minimisers[1].to_string(), "++");
}

TEST(BruteForce, MatchesNaiveEnumeration) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng(seed);
    IsingProblem p = gen_uniform(11, seed);
    if (seed % 2 == 1) {
      p.bias.resize(11);
      for (auto& b : p.bias) b = rng.uniform_pm1();
      p.offset = 0.5;
    }
    const auto ref = testing::naive_ground(p, energy_tolerance(p));
    const auto got = brute_force_ground(p);
    EXPECT_NEAR(got.energy, ref.energy, 1e-12) << seed;
    EXPECT_EQ(got.minimisers, configs(ref.masks, 11)) << seed;
  }
}

TEST(BruteForce, FrozenGroundEnergies) {
  EXPECT_NEAR(brute_force_ground(gen_uniform(14, 2024)).energy, kFrozenUniform14, 1e-9);
  EXPECT_NEAR(brute_force_ground(gen_random_pm1(14, 2024)).energy, kFrozenPm114, 1e-9);
}

TEST(BruteForce, DegenerateMinimaAllReported) {
  // No couplings: every configuration is optimal.
  const auto g = brute_force_ground(IsingProblem(CouplingMatrix(5)));
  EXPECT_EQ(g.energy, 0.0);
  EXPECT_EQ(g.minimisers.size(), 32U);
}

TEST(BruteForce, WorkerCountDoesNotChangeResult) {
  const IsingProblem p = gen_random_pm1(18, 3);
  const auto one = brute_force_ground(p, {.workers = 1});
  for (unsigned w : {2U, 3U, 8U}) {
    const auto many = brute_force_ground(p, {.workers = w});
    EXPECT_EQ(many.energy, one.energy);
    EXPECT_EQ(many.minimisers, one.minimisers);
  }
}

TEST(BruteForce, WishartMinimisersArePlantedPair) {
  const PlantedInstance inst = gen_wishart(12, 1.0, 3);
  const auto g = brute_force_ground(inst.problem);
  std::vector<SpinConfig> expected = {inst.planted, inst.planted.flipped()};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(g.minimisers, expected);
}

TEST(BruteForce, CapEnforced) {
  const IsingProblem p(CouplingMatrix(25));
  EXPECT_THROW((void)brute_force_ground(p), std::invalid_argument);
  EXPECT_THROW((void)brute_force_ground(IsingProblem(CouplingMatrix(49)), {.allow_over_cap = true}),
               std::invalid_argument);
  EXPECT_GT(brute_force_estimate_seconds(30), brute_force_estimate_seconds(20));
}

TEST(FlipDeltas, MatchFullReevaluation) {
  Rng rng(10);
  IsingProblem p = gen_uniform(10, 10);
  p.bias.resize(10);
  for (auto& b : p.bias) b = rng.uniform_pm1();
  const SpinConfig s = SpinConfig::from_mask(0b1011001101, 10);
  const auto delta = flip_deltas(p, s);
  const double base = testing::naive_objective(p, s.as_doubles());
  for (std::size_t i = 0; i < 10; ++i) {
    SpinConfig t = s;
    t.flip(i);
    EXPECT_NEAR(delta[i], testing::naive_objective(p, t.as_doubles()) - base, 1e-12) << i;
  }
}

TEST(SingleFlipStable, Examples) {
  const IsingProblem ferro(CouplingMatrix::from_dense(2, {0, -1, -1, 0}));
  EXPECT_FALSE(single_flip_stable(ferro, SpinConfig(std::vector<std::int8_t>{1, -1})));
  EXPECT_TRUE(single_flip_stable(ferro, SpinConfig(std::vector<std::int8_t>{1, 1})));
  const IsingProblem p = gen_uniform(12, 6);
  for (const auto& s : brute_force_ground(p).minimisers) EXPECT_TRUE(single_flip_stable(p, s));
}

}  // namespace
}  // namespace lqa

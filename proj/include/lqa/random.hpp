// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace lqa {

// SplitMix64 finaliser (Steele, Lea, Flood 2014). Used to derive independent
// seeds from structured inputs.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for trial `trial` of instance `instance` under `base`:
//   splitmix64(splitmix64(splitmix64(base) ^ instance) ^ trial)
// Adding trials or instances never changes the seeds of existing ones.
[[nodiscard]] constexpr std::uint64_t trial_seed(std::uint64_t base, std::uint64_t instance,
                                                 std::uint64_t trial) noexcept {
  return splitmix64(splitmix64(splitmix64(base) ^ instance) ^ trial);
}

// Seeded generator with explicitly pinned variate algorithms, so draws do not
// depend on the standard library's distribution implementations.
//   uniform01: top 53 bits of an mt19937_64 word, times 2^-53, in [0, 1).
//   normal:    Box-Muller, two uniforms per pair, cached second variate.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  [[nodiscard]] std::uint64_t next_u64() { return engine_(); }

  [[nodiscard]] double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [-1, 1).
  [[nodiscard]] double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  [[nodiscard]] int random_sign() { return (engine_() >> 63) ? -1 : 1; }

  [[nodiscard]] double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lqa

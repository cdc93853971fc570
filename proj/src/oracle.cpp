// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqa/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace lqa {

namespace {

constexpr std::size_t kHardSpinLimit = 48;
constexpr std::uint64_t kResyncInterval = std::uint64_t{1} << 16;

struct Candidate {
  std::uint64_t mask;
  double energy;
};

struct PartialResult {
  double best = std::numeric_limits<double>::infinity();
  std::vector<Candidate> candidates;

  void offer(std::uint64_t mask, double e, double tol) {
    if (e < best) {
      best = e;
      std::erase_if(candidates, [&](const Candidate& c) { return c.energy > best + tol; });
    }
    if (e <= best + tol) candidates.push_back({mask, e});
  }
};

// Enumerates every configuration whose top `prefix_bits` bits equal `prefix`.
class BlockEnumerator {
 public:
  BlockEnumerator(const IsingProblem& p, double tol) : p_(p), n_(p.size()), tol_(tol),
      s_(n_), h_(n_) {}

  void run(std::uint64_t prefix, std::size_t low_bits, PartialResult& out) {
    mask_ = prefix << low_bits;
    for (std::size_t i = 0; i < n_; ++i) s_[i] = ((mask_ >> i) & 1U) ? -1.0 : 1.0;
    resync();
    out.offer(mask_, energy_, tol_);

    const std::uint64_t count = std::uint64_t{1} << low_bits;
    for (std::uint64_t g = 1; g < count; ++g) {
      const auto i = static_cast<std::size_t>(std::countr_zero(g));
      flip(i);
      if ((g & (kResyncInterval - 1)) == 0) resync();
      out.offer(mask_, energy_, tol_);
    }
  }

 private:
  void resync() {
    energy_ = p_.offset;
    for (std::size_t i = 0; i < n_; ++i) {
      h_[i] = dot(p_.couplings.row(i), s_);
      energy_ += s_[i] * h_[i];
      if (!p_.bias.empty()) energy_ += p_.bias[i] * s_[i];
    }
  }

  void flip(std::size_t i) {
    const double si = s_[i];
    double delta = -4.0 * si * h_[i];
    if (!p_.bias.empty()) delta -= 2.0 * si * p_.bias[i];
    energy_ += delta;
    s_[i] = -si;
    mask_ ^= std::uint64_t{1} << i;
    const auto row = p_.couplings.row(i);
    const double step = -2.0 * si;
    for (std::size_t j = 0; j < n_; ++j) h_[j] += step * row[j];
  }

  const IsingProblem& p_;
  std::size_t n_;
  double tol_;
  std::vector<double> s_;
  std::vector<double> h_;
  std::uint64_t mask_ = 0;
  double energy_ = 0.0;
};

}  // namespace

double brute_force_estimate_seconds(std::size_t n) noexcept {
  // About 1.5 ns per field update on a current desktop core.
  return std::ldexp(1.0, static_cast<int>(n)) * static_cast<double>(n + 4) * 1.5e-9;
}

GroundStates brute_force_ground(const IsingProblem& p, const BruteForceOptions& options) {
  const std::size_t n = p.size();
  if (n > kBruteForceSpinCap && !options.allow_over_cap) {
    throw std::invalid_argument("brute force is capped at " + std::to_string(kBruteForceSpinCap) +
                                " spins (problem has " + std::to_string(n) + ")");
  }
  if (n > kHardSpinLimit) {
    throw std::invalid_argument("brute force cannot enumerate " + std::to_string(n) + " spins");
  }
  const double tol = energy_tolerance(p);

  const unsigned workers = std::max(1U, options.workers);
  std::size_t prefix_bits = 0;
  while ((std::size_t{1} << prefix_bits) < 4 * workers && prefix_bits + 8 < n) ++prefix_bits;
  const std::size_t low_bits = n - prefix_bits;
  const std::uint64_t blocks = std::uint64_t{1} << prefix_bits;

  std::vector<PartialResult> partial(blocks);
  auto work = [&](unsigned worker) {
    BlockEnumerator e(p, tol);
    for (std::uint64_t b = worker; b < blocks; b += workers) e.run(b, low_bits, partial[b]);
  };
  if (workers == 1 || blocks == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < std::min<std::uint64_t>(workers, blocks); ++w) pool.emplace_back(work, w);
  }

  GroundStates out;
  out.energy = std::numeric_limits<double>::infinity();
  for (const auto& r : partial) out.energy = std::min(out.energy, r.best);
  double exact = std::numeric_limits<double>::infinity();
  for (const auto& r : partial) {
    for (const auto& c : r.candidates) {
      if (c.energy > out.energy + tol) continue;
      SpinConfig s = SpinConfig::from_mask(c.mask, n);
      exact = std::min(exact, objective(p, s));
      out.minimisers.push_back(std::move(s));
    }
  }
  // Report the minimum recomputed from scratch rather than the running sum.
  out.energy = exact;
  std::sort(out.minimisers.begin(), out.minimisers.end());
  return out;
}

std::vector<double> flip_deltas(const IsingProblem& p, const SpinConfig& s) {
  const std::size_t n = p.size();
  if (s.size() != n) throw std::invalid_argument("spin configuration has the wrong length");
  const std::vector<double> sd = s.as_doubles();
  std::vector<double> delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = dot(p.couplings.row(i), sd);
    delta[i] = -4.0 * sd[i] * h;
    if (!p.bias.empty()) delta[i] -= 2.0 * sd[i] * p.bias[i];
  }
  return delta;
}

bool single_flip_stable(const IsingProblem& p, const SpinConfig& s) {
  const double tol = energy_tolerance(p);
  const auto delta = flip_deltas(p, s);
  return std::all_of(delta.begin(), delta.end(), [&](double d) { return d >= -tol; });
}

}  // namespace lqa

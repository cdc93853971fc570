// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lqa/ising.hpp"

namespace lqa {

// Text instance format (Chook-compatible):
//
//   # any comment
//   # spins: 4              optional, pads trailing uncoupled spins
//   # ground_energy: -3.0   optional known optimum
//   # offset: 0.5           optional constant term
//   0 1 1.0                 coupling between spins 0 and 1, one line per pair
//   b 2 -0.5                bias on spin 2
//
// Indices are 0-based. Each unordered pair appears at most once and the loader
// mirrors it into both triangles. Self-couplings are rejected. LF and CRLF
// line endings are accepted.
class InstanceParseError : public std::runtime_error {
 public:
  InstanceParseError(const std::string& source, std::size_t line, const std::string& what);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

[[nodiscard]] IsingProblem parse_instance(std::istream& in, const std::string& source = "<input>");

// Throws std::runtime_error naming the path if it cannot be opened.
[[nodiscard]] IsingProblem load_instance(const std::filesystem::path& path);

// `comments` are written first as "# <line>". Couplings are emitted for i < j
// with nonzero value, in row-major order, using round-trip exact decimals.
void write_instance(std::ostream& out, const IsingProblem& p,
                    const std::vector<std::string>& comments = {});

void save_instance(const std::filesystem::path& path, const IsingProblem& p,
                   const std::vector<std::string>& comments = {});

}  // namespace lqa

// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lqa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Environment variable that overrides the bench worker count.
inline constexpr const char* kWorkersEnv = "LQA_WORKERS";

// Entry point of the `lqa` tool: solve | generate | bench | oracle.
// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lqa::cli

// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

namespace lqa {

// Shortest round-trip decimal form of v ("nan"/"inf" for non-finite values).
[[nodiscard]] std::string format_double(double v);

// Writes through a temporary sibling file and renames it over `path`, so a
// reader never observes a partially written file.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer);

}  // namespace lqa

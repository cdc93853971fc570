// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqa/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>
#include <utility>

#include "lqa/format.hpp"

namespace lqa {

InstanceParseError::InstanceParseError(const std::string& source, std::size_t line,
                                       const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_real(std::string_view s) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

// Practical bound so a stray huge index fails cleanly instead of allocating.
constexpr std::size_t kMaxSpins = 1U << 16;

}  // namespace

IsingProblem parse_instance(std::istream& in, const std::string& source) {
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, std::size_t>> pairs;
  std::map<std::size_t, std::pair<double, std::size_t>> biases;
  std::optional<double> ground;
  std::optional<std::size_t> declared_spins;
  double offset = 0.0;
  std::size_t n = 0;

  auto fail = [&](std::size_t line, const std::string& what) -> InstanceParseError {
    return InstanceParseError(source, line, what);
  };

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string_view key = trim(body.substr(0, colon));
      const std::string_view value = trim(body.substr(colon + 1));
      if (key == "ground_energy") {
        ground = parse_real(value);
        if (!ground) throw fail(lineno, "bad ground_energy value '" + std::string(value) + "'");
      } else if (key == "offset") {
        auto v = parse_real(value);
        if (!v) throw fail(lineno, "bad offset value '" + std::string(value) + "'");
        offset = *v;
      } else if (key == "spins") {
        declared_spins = parse_index(value);
        if (!declared_spins || *declared_spins > kMaxSpins) {
          throw fail(lineno, "bad spins value '" + std::string(value) + "'");
        }
      }
      continue;
    }

    const auto fields = split_ws(line);
    if (fields.size() != 3) {
      throw fail(lineno, "expected 3 fields, found " + std::to_string(fields.size()));
    }
    const auto value = parse_real(fields[2]);
    if (!value) throw fail(lineno, "bad coupling value '" + std::string(fields[2]) + "'");

    if (fields[0] == "b") {
      const auto i = parse_index(fields[1]);
      if (!i || *i >= kMaxSpins) throw fail(lineno, "bad spin index '" + std::string(fields[1]) + "'");
      if (auto it = biases.find(*i); it != biases.end()) {
        throw fail(lineno, "duplicate bias on spin " + std::to_string(*i) + " (first on line " +
                               std::to_string(it->second.second) + ")");
      }
      biases.emplace(*i, std::pair{*value, lineno});
      n = std::max(n, *i + 1);
      continue;
    }

    const auto i = parse_index(fields[0]);
    const auto j = parse_index(fields[1]);
    if (!i || *i >= kMaxSpins) throw fail(lineno, "bad spin index '" + std::string(fields[0]) + "'");
    if (!j || *j >= kMaxSpins) throw fail(lineno, "bad spin index '" + std::string(fields[1]) + "'");
    if (*i == *j) {
      throw fail(lineno, "self-coupling on spin " + std::to_string(*i) +
                             " is not allowed; use a 'b i value' bias line");
    }
    const auto key = std::minmax(*i, *j);
    if (auto it = pairs.find(key); it != pairs.end()) {
      const bool mirrored = it->second.first != *value;
      throw fail(lineno, std::string(mirrored ? "asymmetric" : "duplicate") + " coupling for pair (" +
                             std::to_string(key.first) + ", " + std::to_string(key.second) +
                             "), first given on line " + std::to_string(it->second.second));
    }
    pairs.emplace(key, std::pair{*value, lineno});
    n = std::max(n, key.second + 1);
  }

  if (declared_spins) {
    if (*declared_spins < n) {
      throw InstanceParseError(source, lineno,
                               "declared spins " + std::to_string(*declared_spins) +
                                   " smaller than the largest index used");
    }
    n = *declared_spins;
  }

  CouplingMatrix j(n);
  for (const auto& [key, entry] : pairs) j.set(key.first, key.second, entry.first);
  std::vector<double> b;
  if (!biases.empty()) {
    b.assign(n, 0.0);
    for (const auto& [i, entry] : biases) b[i] = entry.first;
  }
  return IsingProblem(std::move(j), std::move(b), ground, offset);
}

IsingProblem load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file '" + path.string() + "'");
  return parse_instance(in, path.string());
}

void write_instance(std::ostream& out, const IsingProblem& p,
                    const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "# spins: " << p.size() << '\n';
  if (p.ground_energy) out << "# ground_energy: " << format_double(*p.ground_energy) << '\n';
  if (p.offset != 0.0) out << "# offset: " << format_double(p.offset) << '\n';
  const std::size_t n = p.size();
  std::string line;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = p.couplings.row(i);
    for (std::size_t k = i + 1; k < n; ++k) {
      if (row[k] == 0.0) continue;
      line.clear();
      line += std::to_string(i);
      line += ' ';
      line += std::to_string(k);
      line += ' ';
      line += format_double(row[k]);
      line += '\n';
      out << line;
    }
  }
  for (std::size_t i = 0; i < p.bias.size(); ++i) {
    if (p.bias[i] != 0.0) out << "b " << i << ' ' << format_double(p.bias[i]) << '\n';
  }
}

void save_instance(const std::filesystem::path& path, const IsingProblem& p,
                   const std::vector<std::string>& comments) {
  write_file_atomically(path, [&](std::ostream& out) { write_instance(out, p, comments); });
}

}  // namespace lqa

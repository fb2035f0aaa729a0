// Copyright 2026 The bornphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bornphase/quantum/serialization.hpp"

#include <fmt/format.h>

#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "bornphase/errors.hpp"

namespace bornphase {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view s, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(line_no, "invalid number '" + std::string(s) + "'");
  }
  return value;
}

std::size_t parse_index(std::string_view s, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(line_no, "invalid index '" + std::string(s) + "'");
  }
  return value;
}

template <typename Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    const auto fields = split_fields(line);
    if (!fields.empty() && fields[0].front() != '#') fn(fields, line_no);
    pos = end + 1;
  }
}

void require_field_count(const std::vector<std::string_view>& fields, std::size_t n,
                         std::size_t line_no) {
  if (fields.size() != n) {
    fail(line_no, "record '" + std::string(fields[0]) + "' expects " +
                      std::to_string(n - 1) + " fields");
  }
}

}  // namespace

std::string serialize_system(const SpectralSystem& system) {
  std::string out;
  for (std::size_t n = 0; n < system.dim(); ++n) {
    out += fmt::format("E {} {:.17g}\n", n, system.energy(n));
  }
  const auto& v = system.eigenvectors();
  for (std::size_t r = 0; r < v.rows(); ++r) {
    for (std::size_t c = 0; c < v.cols(); ++c) {
      out += fmt::format("V {} {} {:.17g} {:.17g}\n", r, c, v(r, c).real(),
                         v(r, c).imag());
    }
  }
  return out;
}

std::string serialize_state(const StateVector& state) {
  std::string out;
  for (std::size_t n = 0; n < state.dim(); ++n) {
    out += fmt::format("C {} {:.17g} {:.17g}\n", n, state[n].real(), state[n].imag());
  }
  return out;
}

SpectralSystem parse_system(std::string_view text) {
  std::map<std::size_t, double> energies;
  std::map<std::pair<std::size_t, std::size_t>, Complex> entries;
  for_each_record(text, [&](const auto& fields, std::size_t line_no) {
    if (fields[0] == "E") {
      require_field_count(fields, 3, line_no);
      const auto idx = parse_index(fields[1], line_no);
      if (!energies.emplace(idx, parse_double(fields[2], line_no)).second) {
        fail(line_no, "duplicate energy index");
      }
    } else if (fields[0] == "V") {
      require_field_count(fields, 5, line_no);
      const auto key = std::pair{parse_index(fields[1], line_no),
                                 parse_index(fields[2], line_no)};
      const Complex value{parse_double(fields[3], line_no),
                          parse_double(fields[4], line_no)};
      if (!entries.emplace(key, value).second) fail(line_no, "duplicate V entry");
    } else if (fields[0] != "C") {
      fail(line_no, "unknown record type '" + std::string(fields[0]) + "'");
    }
  });
  const std::size_t n = energies.size();
  if (n == 0) throw ParseError("no E records");
  std::vector<double> e(n);
  for (const auto& [idx, value] : energies) {
    if (idx >= n) throw ParseError("energy indices must be 0..n-1");
    e[idx] = value;
  }
  if (entries.size() != n * n) {
    throw ParseError("expected " + std::to_string(n * n) + " V records, got " +
                     std::to_string(entries.size()));
  }
  ComplexMatrix v(n, n);
  for (const auto& [key, value] : entries) {
    if (key.first >= n || key.second >= n) throw ParseError("V index out of range");
    v(key.first, key.second) = value;
  }
  return make_system_from_spectrum(std::move(e), std::move(v), 0.0);
}

StateVector parse_state(std::string_view text, std::string label) {
  std::map<std::size_t, Complex> coeffs;
  for_each_record(text, [&](const auto& fields, std::size_t line_no) {
    if (fields[0] == "C") {
      require_field_count(fields, 4, line_no);
      const auto idx = parse_index(fields[1], line_no);
      const Complex value{parse_double(fields[2], line_no),
                          parse_double(fields[3], line_no)};
      if (!coeffs.emplace(idx, value).second) fail(line_no, "duplicate C index");
    } else if (fields[0] != "E" && fields[0] != "V") {
      fail(line_no, "unknown record type '" + std::string(fields[0]) + "'");
    }
  });
  if (coeffs.empty()) throw ParseError("no C records");
  std::vector<Complex> amplitudes(coeffs.size());
  for (const auto& [idx, value] : coeffs) {
    if (idx >= amplitudes.size()) throw ParseError("C indices must be 0..n-1");
    amplitudes[idx] = value;
  }
  return StateVector(std::move(amplitudes), std::move(label));
}

}  // namespace bornphase

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

#include "bornphase/experiment/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <map>

#include "bornphase/errors.hpp"
#include "bornphase/lattice/fft.hpp"

namespace bornphase {
namespace {

constexpr std::array kKeys = {
    ConfigKey{"experiment",
              "born-check | sampler-compare | weyl-test | te-scan | free-particle | kappa"},
    ConfigKey{"seed", "64-bit seed for the counter-based RNG (required)"},
    ConfigKey{"n_shots", "number of simulated experiments, 1..1e9 (required)"},
    ConfigKey{"t_e", "experiment duration t_e >= 0 (default 0)"},
    ConfigKey{"t_e_over_tau_min",
              "te-scan: ascending list of t_e values in units of the shortest period"},
    ConfigKey{"sampler", "paper_measure | absolute_time (default paper_measure)"},
    ConfigKey{"window",
              "absolute-time window for t_i, >= 1e3 * max period (default 1e6 * max period)"},
    ConfigKey{"deterministic_regime_constraint",
              "true | false: cap elapsed residues by t_e (default false)"},
    ConfigKey{"energy_offset", "added to the Hamiltonian diagonal (default 0)"},
    ConfigKey{"hamiltonian", "inline Hermitian matrix, e.g. '1 0; 0 2'"},
    ConfigKey{"system_file", "path to a serialized system (E/V records)"},
    ConfigKey{"state", "inline coefficients in the energy basis, normalized on load"},
    ConfigKey{"state_file", "path to a serialized state (C records)"},
    ConfigKey{"observable", "inline Hermitian matrix in the energy basis"},
    ConfigKey{"lattice_sites", "free-particle: power of two in [8, 4096] (default 256)"},
    ConfigKey{"lattice_length", "free-particle: box length L > 0 (default 64)"},
    ConfigKey{"mass", "free-particle: particle mass > 0 (default 1)"},
    ConfigKey{"packet_center", "free-particle: packet center (default 0)"},
    ConfigKey{"packet_width", "free-particle: packet width > 0 (default 4)"},
    ConfigKey{"packet_momentum", "free-particle: imprinted momentum (default 0)"},
    ConfigKey{"workers", "worker threads, 1..256 (default 1); results do not depend on it"},
    ConfigKey{"shot_log", "true | false: write every shot to shots.jsonl (default true)"},
    ConfigKey{"out", "output directory (default .)"},
};

struct RawValue {
  std::string value;
  std::size_t line;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool known_key(std::string_view key) {
  for (const auto& k : kKeys) {
    if (k.name == key) return true;
  }
  return false;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::uint64_t> to_u64(std::string_view s) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<bool> to_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  return std::nullopt;
}

std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
  while (pos < text.size()) {
    while (pos < text.size() && is_sep(text[pos])) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !is_sep(text[end])) ++end;
    if (end > pos) tokens.push_back(text.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

// Collects per-key conversion problems without stopping at the first.
class Validator {
 public:
  Validator(const std::map<std::string, RawValue>& raw, std::vector<ConfigIssue>& errors)
      : raw_(raw), errors_(errors) {}

  const RawValue* find(const std::string& key) const {
    const auto it = raw_.find(key);
    return it == raw_.end() ? nullptr : &it->second;
  }

  void error(const RawValue& v, const std::string& key, const std::string& what) {
    errors_.push_back({v.line, key + ": " + what + " (got '" + v.value + "')"});
  }

  template <typename T, typename Convert, typename Check>
  void read(const std::string& key, T& target, Convert convert, Check check,
            const std::string& expectation) {
    const RawValue* v = find(key);
    if (v == nullptr) return;
    const auto parsed = convert(v->value);
    if (!parsed) {
      error(*v, key, "expected " + expectation);
      return;
    }
    if (!check(*parsed)) {
      error(*v, key, "out of range, expected " + expectation);
      return;
    }
    target = *parsed;
  }

 private:
  const std::map<std::string, RawValue>& raw_;
  std::vector<ConfigIssue>& errors_;
};

}  // namespace

std::string_view to_string(Experiment experiment) {
  switch (experiment) {
    case Experiment::born_check: return "born-check";
    case Experiment::sampler_compare: return "sampler-compare";
    case Experiment::weyl_test: return "weyl-test";
    case Experiment::te_scan: return "te-scan";
    case Experiment::free_particle: return "free-particle";
    case Experiment::kappa: return "kappa";
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view text) {
  for (auto e : {Experiment::born_check, Experiment::sampler_compare, Experiment::weyl_test,
                 Experiment::te_scan, Experiment::free_particle, Experiment::kappa}) {
    if (to_string(e) == text) return e;
  }
  return std::nullopt;
}

std::span<const ConfigKey> config_keys() { return kKeys; }

Complex parse_complex(std::string_view token) {
  const auto fail = [&]() -> Complex {
    throw ParseError("invalid complex literal '" + std::string(token) + "'");
  };
  if (token.empty()) fail();
  // A sign that follows the first character splits real and imaginary parts.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 1; i < token.size(); ++i) {
    if ((token[i] == '+' || token[i] == '-') && token[i - 1] != 'e' && token[i - 1] != 'E') {
      split = i;
    }
  }
  if (token.back() != 'i') {
    if (split != std::string_view::npos) fail();
    const auto re = to_double(token);
    if (!re) fail();
    return {*re, 0.0};
  }
  const std::string_view body = token.substr(0, token.size() - 1);
  if (split == std::string_view::npos) {
    const auto im = to_double(body);
    if (!im) fail();
    return {0.0, *im};
  }
  const auto re = to_double(body.substr(0, split));
  auto im_text = body.substr(split);
  const auto im = to_double(im_text);
  if (!re || !im) fail();
  return {*re, *im};
}

std::vector<Complex> parse_inline_vector(std::string_view text) {
  std::vector<Complex> out;
  for (auto token : split_tokens(text)) out.push_back(parse_complex(token));
  if (out.empty()) throw ParseError("empty vector");
  return out;
}

ComplexMatrix parse_inline_matrix(std::string_view text) {
  std::vector<std::vector<Complex>> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto row_text = trim(text.substr(pos, end - pos));
    if (!row_text.empty()) rows.push_back(parse_inline_vector(row_text));
    else if (end != text.size()) throw ParseError("empty matrix row");
    pos = end + 1;
  }
  if (rows.empty()) throw ParseError("empty matrix");
  const std::size_t n = rows.size();
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw ParseError("matrix must be square: " + std::to_string(n) + " rows but a row has " +
                       std::to_string(row.size()) + " entries");
    }
  }
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

ConfigParseResult parse_config(
    std::string_view text,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  ConfigParseResult result;
  auto& errors = result.errors;
  std::map<std::string, RawValue> raw;
  std::vector<std::pair<std::string, std::string>> entries;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back({line_no, "expected 'key = value', got '" + std::string(line) + "'"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      errors.push_back({line_no, "missing key before '='"});
      continue;
    }
    if (!known_key(key)) {
      errors.push_back({line_no, "unknown key '" + key + "'"});
      continue;
    }
    if (value.empty()) {
      errors.push_back({line_no, key + ": empty value"});
      continue;
    }
    if (const auto it = raw.find(key); it != raw.end()) {
      errors.push_back({line_no, "duplicate key '" + key + "' (first set on line " +
                                     std::to_string(it->second.line) + ")"});
      continue;
    }
    raw.emplace(key, RawValue{value, line_no});
    entries.emplace_back(key, value);
  }
  const std::size_t end_line = line_no + 1;

  for (const auto& [key, value] : overrides) {
    if (!known_key(key)) {
      errors.push_back({0, "unknown key '" + key + "' on the command line"});
      continue;
    }
    raw.insert_or_assign(key, RawValue{value, 0});
    entries.emplace_back(key, value);
  }

  ExperimentConfig config;
  Validator v(raw, errors);
  const auto any = [](auto) { return true; };
  const auto nonneg = [](double x) { return x >= 0.0; };
  const auto positive = [](double x) { return x > 0.0; };

  bool have_experiment = false;
  if (const RawValue* e = v.find("experiment")) {
    if (const auto parsed = parse_experiment(e->value)) {
      config.experiment = *parsed;
      have_experiment = true;
    } else {
      v.error(*e, "experiment",
              "expected one of born-check, sampler-compare, weyl-test, te-scan, "
              "free-particle, kappa");
    }
  }
  v.read("seed", config.seed, to_u64, any, "an unsigned 64-bit integer");
  v.read("n_shots", config.n_shots, to_u64,
         [](std::uint64_t n) { return n >= 1 && n <= 1'000'000'000; }, "an integer in [1, 1e9]");
  v.read("t_e", config.t_e, to_double, nonneg, "a real >= 0");
  v.read("sampler", config.sampler, parse_sampler, any, "paper_measure or absolute_time");
  {
    double window = 0.0;
    if (v.find("window")) {
      v.read("window", window, to_double, positive, "a real > 0");
      if (window > 0.0) config.window = window;
    }
  }
  v.read("deterministic_regime_constraint", config.deterministic_regime_constraint, to_bool,
         any, "true or false");
  v.read("energy_offset", config.energy_offset, to_double, any, "a finite real");
  v.read("shot_log", config.shot_log, to_bool, any, "true or false");
  v.read("workers", config.workers, to_u64,
         [](std::uint64_t n) { return n >= 1 && n <= 256; }, "an integer in [1, 256]");
  v.read("lattice_sites", config.lattice.sites, to_u64,
         [](std::uint64_t n) {
           return is_power_of_two(n) && n >= 8 && n <= 4096;
         },
         "a power of two in [8, 4096]");
  v.read("lattice_length", config.lattice.length, to_double, positive, "a real > 0");
  v.read("mass", config.lattice.mass, to_double, positive, "a real > 0");
  v.read("packet_center", config.lattice.packet_center, to_double, any, "a finite real");
  v.read("packet_width", config.lattice.packet_width, to_double, positive, "a real > 0");
  v.read("packet_momentum", config.lattice.packet_momentum, to_double, any, "a finite real");
  if (const RawValue* o = v.find("out")) config.out = o->value;

  if (const RawValue* list = v.find("t_e_over_tau_min")) {
    std::vector<double> values;
    bool ok = true;
    for (auto token : split_tokens(list->value)) {
      const auto x = to_double(token);
      if (!x || *x < 0.0) {
        v.error(*list, "t_e_over_tau_min", "expected non-negative reals");
        ok = false;
        break;
      }
      if (!values.empty() && !(*x > values.back())) {
        v.error(*list, "t_e_over_tau_min", "values must be strictly ascending");
        ok = false;
        break;
      }
      values.push_back(*x);
    }
    if (ok) config.t_e_over_tau_min = std::move(values);
  }

  auto read_matrix = [&](const std::string& key, std::optional<ComplexMatrix>& target) {
    const RawValue* m = v.find(key);
    if (m == nullptr) return;
    try {
      target = parse_inline_matrix(m->value);
      if (target->rows() > 1024) {
        v.error(*m, key, "dimension above 1024");
        target.reset();
      }
    } catch (const ParseError& e) {
      v.error(*m, key, e.what());
    }
  };
  read_matrix("hamiltonian", config.hamiltonian);
  read_matrix("observable", config.observable);
  if (const RawValue* s = v.find("state")) {
    try {
      config.state = parse_inline_vector(s->value);
      double norm = 0.0;
      for (const auto& c : *config.state) norm += std::norm(c);
      if (!(norm > 0.0)) {
        v.error(*s, "state", "zero vector");
        config.state.reset();
      }
    } catch (const ParseError& e) {
      v.error(*s, "state", e.what());
    }
  }
  auto read_path = [&](const std::string& key, std::optional<std::string>& target) {
    const RawValue* p = v.find(key);
    if (p == nullptr) return;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p->value, ec)) {
      v.error(*p, key, "file does not exist");
      return;
    }
    target = p->value;
  };
  read_path("system_file", config.system_file);
  read_path("state_file", config.state_file);

  // Required keys and cross-key rules.
  auto missing = [&](const std::string& what) {
    errors.push_back({end_line, what + " missing"});
  };
  if (!raw.count("experiment")) missing("experiment");
  if (!raw.count("seed")) missing("seed");
  if (!raw.count("n_shots")) missing("n_shots");
  auto exclusive = [&](const std::string& a, const std::string& b) {
    if (raw.count(a) && raw.count(b)) {
      errors.push_back({raw.at(b).line, "set only one of " + a + " and " + b});
    }
  };
  exclusive("hamiltonian", "system_file");
  exclusive("state", "state_file");

  if (have_experiment) {
    const Experiment e = config.experiment;
    const bool needs_system = e == Experiment::born_check || e == Experiment::sampler_compare ||
                              e == Experiment::te_scan || e == Experiment::weyl_test;
    const bool needs_state_obs = e == Experiment::born_check ||
                                 e == Experiment::sampler_compare || e == Experiment::te_scan;
    if (needs_system && !raw.count("hamiltonian") && !raw.count("system_file")) {
      missing("hamiltonian (or system_file)");
    }
    if (needs_state_obs && !raw.count("state") && !raw.count("state_file")) {
      missing("state (or state_file)");
    }
    if (needs_state_obs && !raw.count("observable")) missing("observable");
    if (e == Experiment::te_scan && !raw.count("t_e_over_tau_min")) missing("t_e_over_tau_min");
    if (e == Experiment::weyl_test && raw.count("state") + raw.count("state_file") !=
                                          raw.count("observable")) {
      errors.push_back({end_line, "weyl-test: give both state and observable, or neither"});
    }
  }

  // Dimension agreement between inline operands.
  std::optional<std::size_t> dim;
  auto agree = [&](const std::string& key, std::size_t n) {
    if (dim && *dim != n) {
      errors.push_back({raw.at(key).line, key + ": dimension " + std::to_string(n) +
                                              " does not match " + std::to_string(*dim)});
    }
    if (!dim) dim = n;
  };
  if (config.hamiltonian) agree("hamiltonian", config.hamiltonian->rows());
  if (config.state) agree("state", config.state->size());
  if (config.observable) agree("observable", config.observable->rows());

  std::stable_sort(errors.begin(), errors.end(),
                   [](const ConfigIssue& a, const ConfigIssue& b) { return a.line < b.line; });
  if (errors.empty()) {
    config.entries = std::move(entries);
    config.source_text = std::string(text);
    result.config = std::move(config);
  }
  return result;
}

}  // namespace bornphase

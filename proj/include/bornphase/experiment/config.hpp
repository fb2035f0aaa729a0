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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bornphase/ensemble/phase_sample.hpp"
#include "bornphase/numeric/matrix.hpp"

namespace bornphase {

enum class Experiment { born_check, sampler_compare, weyl_test, te_scan, free_particle, kappa };

std::string_view to_string(Experiment experiment);
std::optional<Experiment> parse_experiment(std::string_view text);

struct LatticeSpec {
  std::size_t sites = 256;
  double length = 64.0;
  double mass = 1.0;
  double packet_center = 0.0;
  double packet_width = 4.0;
  double packet_momentum = 0.0;
};

/// Validated experiment configuration.
///
/// Matrices are given inline, rows separated by ';' and entries by spaces or
/// commas; complex entries are written `re`, `re+imi`, `re-imi` or `imi`.
/// Inline state vectors are normalized on load.
struct ExperimentConfig {
  Experiment experiment = Experiment::kappa;
  std::uint64_t seed = 0;
  std::size_t n_shots = 0;
  double t_e = 0.0;
  std::vector<double> t_e_over_tau_min;
  Sampler sampler = Sampler::paper_measure;
  std::optional<double> window;
  bool deterministic_regime_constraint = false;
  double energy_offset = 0.0;
  std::optional<ComplexMatrix> hamiltonian;
  std::optional<std::string> system_file;
  std::optional<std::vector<Complex>> state;
  std::optional<std::string> state_file;
  std::optional<ComplexMatrix> observable;
  LatticeSpec lattice;
  unsigned workers = 1;
  bool shot_log = true;
  std::string out = ".";

  /// Accepted key/value pairs in input order, command-line overrides last.
  std::vector<std::pair<std::string, std::string>> entries;
  /// The configuration text exactly as read.
  std::string source_text;
};

struct ConfigIssue {
  std::size_t line = 0;  // 0 for command-line overrides
  std::string message;
};

struct ConfigParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<ConfigIssue> errors;

  bool ok() const { return config.has_value(); }
};

/// One documented configuration key.
struct ConfigKey {
  std::string_view name;
  std::string_view help;
};

/// Every accepted key with a one-line description.
std::span<const ConfigKey> config_keys();

/// Parses `key = value` lines ('#' starts a comment). Overrides are applied
/// after the file as if appended, replacing file values. Every problem is
/// reported, each with the line it came from; missing required keys are
/// reported at the line after the last one.
ConfigParseResult parse_config(
    std::string_view text,
    const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Inline literal parsers (exposed for tests). Throw ParseError.
Complex parse_complex(std::string_view token);
std::vector<Complex> parse_inline_vector(std::string_view text);
ComplexMatrix parse_inline_matrix(std::string_view text);

}  // namespace bornphase

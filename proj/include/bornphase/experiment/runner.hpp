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

#include <ostream>
#include <string>
#include <vector>

#include "bornphase/experiment/config.hpp"
#include "bornphase/experiment/output.hpp"

namespace bornphase {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitToleranceFailure = 2;

/// Bound (in standard errors) used by every Monte Carlo pass/fail check.
inline constexpr double kMonteCarloSigmas = 4.0;
/// KS distance accepted for residue uniformity.
inline constexpr double kUniformityThreshold = 0.02;

std::string artifact_version();

/// In-memory artifacts of one run, before anything touches the disk.
struct RunArtifacts {
  std::vector<SummaryRow> rows;
  std::string shots_jsonl;
  std::vector<std::pair<std::string, std::string>> extra_tables;  // file name, CSV
  std::vector<std::string> notes;  // metadata lines for the manifest

  bool all_pass() const;
};

/// Runs the configured experiment and returns its outputs. Progress and
/// results go to `console`; `color` enables ANSI highlighting.
RunArtifacts execute(const ExperimentConfig& config, std::ostream& console, bool color);

/// Executes, writes summary.csv, shots.jsonl, any extra tables and
/// manifest.txt into config.out (each atomically), and returns the exit code:
/// 0 all checks pass, 2 a tolerance check failed. Throws on I/O errors.
int run(const ExperimentConfig& config, std::ostream& console, bool color);

}  // namespace bornphase

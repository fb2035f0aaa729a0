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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bornphase/ensemble/ensemble.hpp"

namespace bornphase {

/// Column schema of summary.csv; bump the version when columns change.
inline constexpr std::string_view kSummarySchema = "summary-v1";
inline constexpr std::string_view kSummaryHeader =
    "experiment,dim,t_e,sampler,n_shots,re_mean,im_mean,stderr,kappa,renormalized,"
    "born_oracle,abs_error,pass";

/// One summary.csv row. Unset optionals are written as empty fields.
struct SummaryRow {
  std::string experiment;
  std::optional<std::size_t> dim;
  std::optional<double> t_e;
  std::string sampler;
  std::optional<std::size_t> n_shots;
  std::optional<double> re_mean;
  std::optional<double> im_mean;
  std::optional<double> std_error;
  std::optional<double> kappa;
  std::optional<double> renormalized;
  std::optional<double> born_oracle;
  std::optional<double> abs_error;
  bool pass = false;
};

std::string format_number(double value);
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// JSON object per line for every shot of one ensemble, then the summary
/// record (count, re_mean, im_mean, stderr, kappa, renormalized, born_oracle).
std::string shot_log_jsonl(std::string_view run_label, const EnsembleResult& result,
                           bool include_shots);

/// Writes `contents` to a temporary file beside `path`, then renames it into
/// place. Throws std::runtime_error naming the path and cause on failure.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace bornphase

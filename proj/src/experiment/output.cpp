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

#include "bornphase/experiment/output.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace bornphase {

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out(kSummaryHeader);
  out += '\n';
  const auto num = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string{};
  };
  const auto count = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string{};
  };
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.experiment, count(r.dim),
                       num(r.t_e), r.sampler, count(r.n_shots), num(r.re_mean),
                       num(r.im_mean), num(r.std_error), num(r.kappa),
                       num(r.renormalized), num(r.born_oracle), num(r.abs_error),
                       r.pass ? "true" : "false");
  }
  return out;
}

std::string shot_log_jsonl(std::string_view run_label, const EnsembleResult& result,
                           bool include_shots) {
  std::string out;
  if (include_shots) {
    for (const auto& shot : result.shots) {
      nlohmann::ordered_json record;
      record["shot_index"] = shot.shot_index;
      record["re"] = shot.value.real();
      record["im"] = shot.value.imag();
      record["sampler"] = std::string(to_string(shot.sampler));
      record["t_e"] = shot.t_e;
      record["seed"] = shot.seed;
      out += record.dump();
      out += '\n';
    }
  }
  nlohmann::ordered_json summary;
  summary["run"] = std::string(run_label);
  summary["count"] = result.stats.count;
  summary["re_mean"] = result.stats.mean.real();
  summary["im_mean"] = result.stats.mean.imag();
  summary["stderr"] = result.stats.std_error;
  summary["kappa"] = result.kappa;
  summary["renormalized"] = result.renormalized.real();
  summary["born_oracle"] = result.born_oracle;
  out += summary.dump();
  out += '\n';
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  const auto tmp = path.parent_path() /
                   ("." + path.filename().string() + ".tmp-" + std::to_string(::getpid()));
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) {
      throw std::runtime_error("cannot open " + tmp.string() + ": " + std::strerror(errno));
    }
    file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    file.flush();
    if (!file) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("write failed for " + tmp.string() + ": " + std::strerror(errno));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw std::runtime_error("cannot move output into place at " + path.string() + ": " +
                             ec.message());
  }
}

}  // namespace bornphase

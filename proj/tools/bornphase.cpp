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

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "bornphase/errors.hpp"
#include "bornphase/experiment/config.hpp"
#include "bornphase/experiment/runner.hpp"

namespace {

std::string key_footer() {
  std::string text = "Config keys (key = value, '#' comments):\n";
  for (const auto& key : bornphase::config_keys()) {
    text += fmt::format("  {:<32} {}\n", key.name, key.help);
  }
  text += "\nExit status: 0 all checks pass, 1 bad config or I/O error, "
          "2 a tolerance check failed.\n";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-ensemble measurement experiments"};
  app.footer(key_footer());

  std::string experiment;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> shots;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
  app.add_option("experiment", experiment,
                 "born-check | sampler-compare | weyl-test | te-scan | free-particle | kappa")
      ->required();
  app.add_option("-c,--config", config_path, "Configuration file")->required();
  app.add_option("--seed", seed, "Override the seed key");
  app.add_option("--shots", shots, "Override the n_shots key");
  app.add_option("--out", out, "Override the output directory");
  app.add_option("--workers", workers, "Override the worker thread count");
  app.add_flag("--version", [](std::int64_t) {
    std::cout << "bornphase " << bornphase::artifact_version() << '\n';
    std::exit(0);
  }, "Print the version and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bornphase::kExitUsage;
  }

  const bool color = std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO);

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read config file " << config_path << '\n';
    return bornphase::kExitUsage;
  }
  std::ostringstream text;
  text << in.rdbuf();

  std::vector<std::pair<std::string, std::string>> overrides;
  overrides.emplace_back("experiment", experiment);
  if (seed) overrides.emplace_back("seed", std::to_string(*seed));
  if (shots) overrides.emplace_back("n_shots", std::to_string(*shots));
  if (out) overrides.emplace_back("out", *out);
  if (workers) overrides.emplace_back("workers", std::to_string(*workers));

  const auto parsed = bornphase::parse_config(text.str(), overrides);
  if (!parsed.ok()) {
    for (const auto& issue : parsed.errors) {
      if (issue.line == 0) {
        std::cerr << "error: command line: " << issue.message << '\n';
      } else {
        std::cerr << "error: " << config_path << ':' << issue.line << ": " << issue.message << '\n';
      }
    }
    return bornphase::kExitUsage;
  }

  try {
    return bornphase::run(*parsed.config, std::cout, color);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bornphase::kExitUsage;
  }
}

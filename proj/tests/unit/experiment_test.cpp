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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "bornphase/errors.hpp"
#include "bornphase/experiment/config.hpp"
#include "bornphase/experiment/output.hpp"
#include "bornphase/experiment/runner.hpp"

namespace bornphase {
namespace {

namespace fs = std::filesystem;

const char* kBornConfig =
    "# two-level example\n"
    "experiment = born-check\n"
    "seed = 42\n"
    "n_shots = 2000\n"
    "t_e = 0.5\n"
    "hamiltonian = 1 0; 0 2\n"
    "state = 0.894427190999916 0.447213595499958\n"
    "observable = 0 1; 1 0\n";

bool has_error(const ConfigParseResult& r, std::size_t line, const std::string& needle) {
  for (const auto& e : r.errors) {
    if (e.line == line && e.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("bornphase_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Config, EmptyFileReportsExperimentMissing) {
  const auto r = parse_config("");
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(has_error(r, 1, "experiment missing"));
}

TEST(Config, SeedAloneListsOtherRequiredKeys) {
  const auto r = parse_config("seed = 42\n");
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(has_error(r, 2, "experiment missing"));
  EXPECT_TRUE(has_error(r, 2, "n_shots missing"));
}

TEST(Config, ExperimentSpecificRequiredKeys) {
  const auto r = parse_config("experiment = te-scan\nseed = 1\nn_shots = 10\n");
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(has_error(r, 4, "hamiltonian"));
  EXPECT_TRUE(has_error(r, 4, "state"));
  EXPECT_TRUE(has_error(r, 4, "observable"));
  EXPECT_TRUE(has_error(r, 4, "t_e_over_tau_min"));
}

TEST(Config, ValidFileParses) {
  const auto r = parse_config(kBornConfig);
  ASSERT_TRUE(r.ok()) << r.errors.front().message;
  const auto& c = *r.config;
  EXPECT_EQ(c.experiment, Experiment::born_check);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.n_shots, 2000u);
  EXPECT_EQ(c.t_e, 0.5);
  EXPECT_EQ(c.hamiltonian->rows(), 2u);
  EXPECT_EQ(c.source_text, kBornConfig);
}

TEST(Config, ReportsEveryErrorWithItsLine) {
  const auto r = parse_config(
      "experiment = born-check\n"
      "seed = -3\n"
      "n_shots = lots\n"
      "colour = blue\n"
      "t_e = -1\n"
      "seed = 4\n");
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(has_error(r, 2, "seed"));
  EXPECT_TRUE(has_error(r, 3, "n_shots"));
  EXPECT_TRUE(has_error(r, 4, "unknown key"));
  EXPECT_TRUE(has_error(r, 5, "t_e"));
  EXPECT_TRUE(has_error(r, 6, "duplicate"));
}

TEST(Config, OverridesReplaceFileValues) {
  const auto r = parse_config(kBornConfig, {{"seed", "7"}, {"n_shots", "10"}});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.config->seed, 7u);
  EXPECT_EQ(r.config->n_shots, 10u);
  const auto bad = parse_config(kBornConfig, {{"n_shots", "zero"}});
  ASSERT_FALSE(bad.ok());
  EXPECT_TRUE(has_error(bad, 0, "n_shots"));
}

TEST(Config, DimensionMismatchAndExclusiveKeys) {
  const auto r = parse_config(
      "experiment = born-check\nseed = 1\nn_shots = 5\n"
      "hamiltonian = 1 0; 0 2\nstate = 1 0 0\nobservable = 1 0; 0 1\n");
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(has_error(r, 5, "dimension"));
  const auto missing_file = parse_config(
      "experiment = born-check\nseed = 1\nn_shots = 5\nsystem_file = /no/such/file\n"
      "state = 1\nobservable = 1\n");
  EXPECT_TRUE(has_error(missing_file, 4, "does not exist"));
}

TEST(Config, InlineLiterals) {
  EXPECT_EQ(parse_complex("1.5"), Complex(1.5, 0));
  EXPECT_EQ(parse_complex("1-2i"), Complex(1, -2));
  EXPECT_EQ(parse_complex("-2.5i"), Complex(0, -2.5));
  EXPECT_EQ(parse_complex("1e-3+4e2i"), Complex(1e-3, 4e2));
  EXPECT_THROW(parse_complex("x"), ParseError);
  EXPECT_EQ(parse_inline_vector("1, 2 3i").size(), 3u);
  EXPECT_THROW(parse_inline_matrix("1 2; 3"), ParseError);
}

TEST(Config, FuzzedInputNeverCrashesAndNamesALine) {
  const std::vector<std::string> keys{"experiment", "seed", "n_shots", "t_e", "sampler",
                                      "window", "hamiltonian", "state", "observable",
                                      "lattice_sites", "workers", "bogus", "", "="};
  const std::vector<std::string> values{"born-check", "kappa", "1", "-1", "1e400", "nan",
                                        "1 0; 0 2", "1 2 3", "true", "", "0x10", "=",
                                        "paper_measure", "99999999999999999999999"};
  std::mt19937_64 gen(8);
  for (int rep = 0; rep < 2000; ++rep) {
    std::string text;
    const int lines = 1 + int(gen() % 8);
    for (int i = 0; i < lines; ++i) {
      switch (gen() % 4) {
        case 0: text += "# comment\n"; break;
        case 1: text += keys[gen() % keys.size()] + "\n"; break;
        default:
          text += keys[gen() % keys.size()] + " = " + values[gen() % values.size()] + "\n";
      }
    }
    ConfigParseResult r;
    ASSERT_NO_THROW(r = parse_config(text)) << text;
    if (!r.ok()) {
      ASSERT_FALSE(r.errors.empty());
      for (const auto& e : r.errors) {
        ASSERT_GE(e.line, 1u) << text;
        ASSERT_LE(e.line, std::size_t(lines) + 1) << text;
      }
    }
  }
}

TEST(Output, SummaryCsvSchema) {
  SummaryRow row;
  row.experiment = "kappa";
  row.re_mean = 0.5;
  row.pass = true;
  const auto csv = summary_csv({row});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kSummaryHeader);
  EXPECT_NE(csv.find("kappa,,,,,0.5,"), std::string::npos) << csv;
  EXPECT_NE(csv.find(",true\n"), std::string::npos);
}

TEST(Output, AtomicWriteReplacesAndLeavesNoTemp) {
  const auto dir = scratch_dir("atomic");
  write_atomic(dir / "a.txt", "one");
  write_atomic(dir / "a.txt", "two");
  EXPECT_EQ(slurp(dir / "a.txt"), "two");
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) { (void)entry; ++files; }
  EXPECT_EQ(files, 1u);
  EXPECT_THROW(write_atomic(dir / "missing" / "b.txt", "x"), std::runtime_error);
}

TEST(Runner, KappaExperiment) {
  const auto dir = scratch_dir("kappa");
  auto r = parse_config("experiment = kappa\nseed = 0\nn_shots = 1\nout = " + dir.string() + "\n");
  ASSERT_TRUE(r.ok());
  std::ostringstream console;
  EXPECT_EQ(run(*r.config, console, false), kExitOk);
  EXPECT_NE(console.str().find("0.5894898"), std::string::npos) << console.str();
  const auto csv = slurp(dir / "summary.csv");
  EXPECT_NE(csv.find("kappa,"), std::string::npos);
  const auto manifest = slurp(dir / "manifest.txt");
  EXPECT_NE(manifest.find("experiment = kappa\nseed = 0\n"), std::string::npos);
  EXPECT_NE(manifest.find(std::string(kSummarySchema)), std::string::npos);
}

TEST(Runner, BornCheckWritesConsistentArtifacts) {
  const auto dir = scratch_dir("born");
  auto r = parse_config(std::string(kBornConfig) + "out = " + dir.string() + "\n");
  ASSERT_TRUE(r.ok());
  std::ostringstream console;
  EXPECT_EQ(run(*r.config, console, false), kExitOk) << console.str();
  std::ifstream shots(dir / "shots.jsonl");
  std::string line;
  std::size_t n = 0;
  nlohmann::json last;
  while (std::getline(shots, line)) {
    last = nlohmann::json::parse(line);
    ++n;
  }
  EXPECT_EQ(n, 2001u);
  EXPECT_EQ(last["count"], 2000);
  EXPECT_NEAR(last["born_oracle"].get<double>(), 0.8, 1e-12);
  EXPECT_EQ(console.str().find("\x1b["), std::string::npos);
}

TEST(Runner, ToleranceFailureGivesExitTwo) {
  const auto dir = scratch_dir("fail");
  auto r = parse_config(
      "experiment = weyl-test\nseed = 1\nn_shots = 100\nhamiltonian = 1 0; 0 2\n"
      "window = 6283.185307179586\nout = " + dir.string() + "\n");
  ASSERT_TRUE(r.ok()) << r.errors.front().message;
  std::ostringstream console;
  // 100 draws cannot reach KS <= 0.02.
  EXPECT_EQ(run(*r.config, console, false), kExitToleranceFailure);
  EXPECT_TRUE(fs::exists(dir / "weyl.csv"));
}

}  // namespace
}  // namespace bornphase

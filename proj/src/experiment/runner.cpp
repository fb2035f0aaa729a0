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

#include "bornphase/experiment/runner.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bornphase/errors.hpp"
#include "bornphase/lattice/lattice.hpp"
#include "bornphase/numeric/quadrature.hpp"
#include "bornphase/quantum/serialization.hpp"

namespace bornphase {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Si(x) by its alternating power series; an independent check on the
// quadrature value of the sinc constant.
double sine_integral_series(double x) {
  double term = x;  // x^{2n+1} / (2n+1)!
  double sum = 0.0;
  for (int n = 0; n < 60; ++n) {
    sum += term / double(2 * n + 1);
    term *= -x * x / (double(2 * n + 2) * double(2 * n + 3));
  }
  return sum;
}

struct Loaded {
  SpectralSystem system;
  std::optional<StateVector> state;
  std::optional<Observable> observable;
};

Loaded load_operands(const ExperimentConfig& config) {
  auto system = config.system_file ? parse_system(read_file(*config.system_file))
                                   : make_system(*config.hamiltonian, config.energy_offset);
  std::optional<StateVector> state;
  if (config.state) state = StateVector::normalized(*config.state, "config");
  if (config.state_file) state = parse_state(read_file(*config.state_file), *config.state_file);
  std::optional<Observable> observable;
  if (config.observable) observable = Observable::from_matrix(*config.observable);
  if (state && state->dim() != system.dim()) {
    throw DimensionError("state dimension does not match the system");
  }
  if (observable && observable->dim() != system.dim()) {
    throw DimensionError("observable dimension does not match the system");
  }
  return {std::move(system), std::move(state), std::move(observable)};
}

class Console {
 public:
  Console(std::ostream& out, bool color) : out_(out), color_(color) {}

  void line(const std::string& text) { out_ << text << '\n'; }

  void verdict(bool pass, const std::string& text) {
    const char* tag = pass ? "PASS" : "FAIL";
    if (color_) {
      out_ << (pass ? "\x1b[32m" : "\x1b[31m") << tag << "\x1b[0m " << text << '\n';
    } else {
      out_ << tag << ' ' << text << '\n';
    }
  }

 private:
  std::ostream& out_;
  bool color_;
};

SummaryRow ensemble_row(std::string label, const SpectralSystem& system,
                        const EnsembleConfig& cfg, const EnsembleResult& r) {
  SummaryRow row;
  row.experiment = std::move(label);
  row.dim = system.dim();
  row.t_e = cfg.t_e;
  row.sampler = std::string(to_string(cfg.sampler));
  row.n_shots = cfg.n_shots;
  row.re_mean = r.stats.mean.real();
  row.im_mean = r.stats.mean.imag();
  row.std_error = r.stats.std_error;
  row.kappa = r.kappa;
  row.renormalized = r.renormalized.real();
  row.born_oracle = r.born_oracle;
  return row;
}

EnsembleConfig ensemble_config(const ExperimentConfig& config, Sampler sampler) {
  EnsembleConfig cfg;
  cfg.t_e = config.t_e;
  cfg.n_shots = config.n_shots;
  cfg.sampler = sampler;
  cfg.seed = config.seed;
  cfg.window = config.window.value_or(0.0);
  cfg.deterministic_regime_constraint = config.deterministic_regime_constraint;
  cfg.workers = config.workers;
  cfg.keep_shots = config.shot_log;
  return cfg;
}

// |mean / kappa - <A>| <= 4 stderr / kappa.
bool born_bound_holds(const EnsembleResult& r, double& abs_error) {
  abs_error = std::abs(r.renormalized - Complex(r.born_oracle));
  return abs_error <= kMonteCarloSigmas * r.stats.std_error / r.kappa;
}

void note_clamping(RunArtifacts& out, const SpectralSystem& system, const EnsembleConfig& cfg,
                   const EnsembleResult& r) {
  if (!cfg.deterministic_regime_constraint) return;
  out.notes.push_back(fmt::format(
      "deterministic_regime_constraint: t_e = {} caps {} of {} modes (applied per mode "
      "where t_e < tau_n)",
      format_number(cfg.t_e), r.clamped_modes.size(), system.dim()));
}

void run_kappa(RunArtifacts& out, Console& console) {
  const auto t0 = std::chrono::steady_clock::now();
  const double kappa = sinc_constant();
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double series = sine_integral_series(std::numbers::pi) / std::numbers::pi;
  SummaryRow row;
  row.experiment = "kappa";
  row.re_mean = kappa;
  row.im_mean = 0.0;
  row.kappa = kappa;
  row.born_oracle = series;
  row.abs_error = std::abs(kappa - series);
  row.pass = *row.abs_error <= 1e-8;
  console.line(fmt::format("kappa = (1/pi) int_0^pi sin(t)/t dt = {:.10f}", kappa));
  console.line(fmt::format("Si(pi) = {:.10f}", kappa * std::numbers::pi));
  console.verdict(row.pass, fmt::format("quadrature vs. power series |diff| = {:.3e} ({:.3f} ms)",
                                        *row.abs_error, elapsed * 1e3));
  out.rows.push_back(row);
}

void run_born_check(const ExperimentConfig& config, RunArtifacts& out, Console& console) {
  const auto ops = load_operands(config);
  const auto cfg = ensemble_config(config, Sampler::paper_measure);
  const auto result = run_ensemble(ops.system, *ops.state, *ops.observable, cfg);
  const Complex closed = closed_form_average(ops.system, *ops.state, *ops.observable);

  auto row = ensemble_row("born-check", ops.system, cfg, result);
  double abs_error = 0.0;
  const bool mc_ok = born_bound_holds(result, abs_error);
  const bool closed_ok = std::abs(closed - result.kappa * result.born_oracle) <= 1e-10;
  row.abs_error = abs_error;
  row.pass = mc_ok && closed_ok;
  out.rows.push_back(row);
  out.shots_jsonl += shot_log_jsonl("born-check/paper_measure", result, config.shot_log);
  note_clamping(out, ops.system, cfg, result);

  console.line(fmt::format("Born <A> = {:.10f}, kappa = {:.10f}", result.born_oracle, result.kappa));
  console.line(fmt::format("closed-form average = {:.12f}{:+.3e}i", closed.real(), closed.imag()));
  console.verdict(closed_ok, "closed-form average = kappa <A> within 1e-10");
  console.verdict(mc_ok, fmt::format("mean/kappa = {:.6f}, |diff| = {:.3e} <= 4 stderr/kappa = {:.3e}",
                                     result.renormalized.real(), abs_error,
                                     4.0 * result.stats.std_error / result.kappa));
}

void run_sampler_compare(const ExperimentConfig& config, RunArtifacts& out, Console& console) {
  const auto ops = load_operands(config);
  const auto paper_cfg = ensemble_config(config, Sampler::paper_measure);
  const auto measured = run_ensemble(ops.system, *ops.state, *ops.observable, paper_cfg);
  auto paper_row = ensemble_row("sampler-compare", ops.system, paper_cfg, measured);
  double err = 0.0;
  paper_row.pass = born_bound_holds(measured, err);
  paper_row.abs_error = err;
  out.rows.push_back(paper_row);
  out.shots_jsonl += shot_log_jsonl("sampler-compare/paper_measure", measured, config.shot_log);
  note_clamping(out, ops.system, paper_cfg, measured);

  const auto abs_cfg = ensemble_config(config, Sampler::absolute_time);
  const auto absolute = run_ensemble(ops.system, *ops.state, *ops.observable, abs_cfg);
  auto abs_row = ensemble_row("sampler-compare", ops.system, abs_cfg, absolute);
  abs_row.abs_error = std::abs(absolute.stats.mean);
  abs_row.pass = *abs_row.abs_error <= kMonteCarloSigmas * absolute.stats.std_error;
  out.rows.push_back(abs_row);
  out.shots_jsonl += shot_log_jsonl("sampler-compare/absolute_time", absolute, config.shot_log);
  out.notes.push_back("absolute_time window = " + format_number(absolute.window));

  console.verdict(paper_row.pass,
                  fmt::format("paper_measure: mean/kappa = {:.6f} vs <A> = {:.6f}",
                              measured.renormalized.real(), measured.born_oracle));
  console.verdict(abs_row.pass,
                  fmt::format("absolute_time: |mean| = {:.3e} <= 4 stderr = {:.3e} (raw mean "
                              "tends to 0, not kappa <A>)",
                              *abs_row.abs_error, 4.0 * absolute.stats.std_error));
}

void run_weyl_test(const ExperimentConfig& config, RunArtifacts& out, Console& console) {
  const auto ops = load_operands(config);
  const double window =
      config.window.value_or(kDefaultWindowPeriods * ops.system.max_period());
  std::vector<PhaseSample> samples(config.n_shots);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    samples[s] = sample_absolute_time(RngStream{config.seed, s, 0}, ops.system, config.t_e, window);
  }
  const auto distances = weyl_uniformity(samples, ops.system);
  std::string table = "mode,energy,period,ks_distance,pass\n";
  for (std::size_t n = 0; n < distances.size(); ++n) {
    SummaryRow row;
    row.experiment = "weyl-test:mode" + std::to_string(n);
    row.dim = ops.system.dim();
    row.t_e = config.t_e;
    row.sampler = "absolute_time";
    row.n_shots = config.n_shots;
    row.abs_error = distances[n];
    row.pass = distances[n] <= kUniformityThreshold;
    out.rows.push_back(row);
    table += fmt::format("{},{},{},{},{}\n", n, format_number(ops.system.energy(n)),
                         format_number(ops.system.period(n)), format_number(distances[n]),
                         row.pass ? "true" : "false");
    console.verdict(row.pass, fmt::format("mode {} (tau = {:.6f}): KS = {:.4f} <= 0.02", n,
                                          ops.system.period(n), distances[n]));
  }
  out.extra_tables.emplace_back("weyl.csv", table);
  out.notes.push_back("absolute_time window = " + format_number(window));

  if (ops.state && ops.observable) {
    auto cfg = ensemble_config(config, Sampler::absolute_time);
    cfg.window = window;
    const auto result = run_ensemble(ops.system, *ops.state, *ops.observable, cfg);
    auto row = ensemble_row("weyl-test:ensemble", ops.system, cfg, result);
    row.abs_error = std::abs(result.stats.mean);
    row.pass = *row.abs_error <= kMonteCarloSigmas * result.stats.std_error;
    out.rows.push_back(row);
    out.shots_jsonl += shot_log_jsonl("weyl-test/absolute_time", result, config.shot_log);
    console.verdict(row.pass, fmt::format("raw absolute-time mean |{:.3e}| <= 4 stderr = {:.3e}",
                                          *row.abs_error, 4.0 * result.stats.std_error));
  }
}

void run_te_scan(const ExperimentConfig& config, RunArtifacts& out, Console& console) {
  const auto ops = load_operands(config);
  const double tau_min = ops.system.min_period();
  std::vector<EnsembleResult> results;
  std::vector<EnsembleConfig> configs;
  for (double ratio : config.t_e_over_tau_min) {
    auto cfg = ensemble_config(config, Sampler::paper_measure);
    cfg.t_e = ratio * tau_min;
    cfg.deterministic_regime_constraint = true;
    results.push_back(run_ensemble(ops.system, *ops.state, *ops.observable, cfg));
    configs.push_back(cfg);
  }
  std::string table = "t_e_over_tau_min,t_e,variance,re_mean,im_mean\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    auto row = ensemble_row("te-scan", ops.system, configs[i], r);
    // The abs_error column carries the single-shot variance for this experiment.
    row.abs_error = r.stats.variance;
    const bool monotone = i + 1 == results.size() || r.stats.variance <= results[i + 1].stats.variance;
    const bool zero_ok = configs[i].t_e > 0.0 || r.stats.variance == 0.0;
    row.pass = monotone && zero_ok;
    out.rows.push_back(row);
    out.shots_jsonl += shot_log_jsonl(
        "te-scan/t_e=" + format_number(configs[i].t_e), r, config.shot_log);
    note_clamping(out, ops.system, configs[i], r);
    table += fmt::format("{},{},{},{},{}\n", format_number(config.t_e_over_tau_min[i]),
                         format_number(configs[i].t_e), format_number(r.stats.variance),
                         format_number(r.stats.mean.real()), format_number(r.stats.mean.imag()));
    console.verdict(row.pass, fmt::format("t_e/tau_min = {:<10g} variance = {:.6e}",
                                          config.t_e_over_tau_min[i], r.stats.variance));
  }
  out.extra_tables.emplace_back("te_scan.csv", table);
}

void run_free_particle(const ExperimentConfig& config, RunArtifacts& out, Console& console) {
  const auto& lat = config.lattice;
  const Lattice lattice(lat.sites, lat.length, lat.mass);
  const auto packet = gaussian_packet(lattice, lat.packet_center, lat.packet_width,
                                      lat.packet_momentum);
  // Offset 0 would leave the k = 0 mode without a period.
  const double offset = config.energy_offset > 0.0 ? config.energy_offset : 1.0;
  if (config.energy_offset <= 0.0) {
    out.notes.push_back("free-particle: energy_offset <= 0 replaced by 1 (k = 0 mode needs E > 0)");
  }
  const auto report = position_measurement_chain(packet, lattice, config.t_e, config.n_shots,
                                                 config.seed, offset, config.workers,
                                                 config.shot_log);
  SummaryRow row;
  row.experiment = "free-particle:position";
  row.dim = lattice.n_sites();
  row.t_e = config.t_e;
  row.sampler = "paper_measure";
  row.n_shots = config.n_shots;
  row.re_mean = report.ensemble.stats.mean.real();
  row.im_mean = report.ensemble.stats.mean.imag();
  row.std_error = report.ensemble.stats.std_error;
  row.kappa = report.ensemble.kappa;
  row.renormalized = report.ensemble.renormalized.real();
  row.born_oracle = report.born_position;
  row.abs_error = report.abs_error;
  row.pass = report.pass;
  out.rows.push_back(row);
  out.shots_jsonl += shot_log_jsonl("free-particle/position", report.ensemble, config.shot_log);

  const double p_direct = momentum_measurement(packet, lattice);
  const double p_born =
      born_expectation(lattice_to_energy_basis(packet, lattice), momentum_observable(lattice));
  SummaryRow prow;
  prow.experiment = "free-particle:momentum";
  prow.dim = lattice.n_sites();
  prow.re_mean = p_direct;
  prow.born_oracle = p_born;
  prow.abs_error = std::abs(p_direct - p_born);
  prow.pass = *prow.abs_error <= 1e-9;
  out.rows.push_back(prow);

  out.notes.push_back(fmt::format(
      "lattice: sites = {}, L = {}, spacing = {}, mass = {}, energy_offset = {}, "
      "momentum cutoff pi/a = {}, momentum resolution 2pi/L = {}",
      lattice.n_sites(), format_number(lattice.length()), format_number(lattice.spacing()),
      format_number(lattice.mass()), format_number(offset),
      format_number(report.momentum_cutoff), format_number(report.momentum_resolution)));
  console.verdict(row.pass, fmt::format("<x>: mean/kappa = {:.6f} vs Born {:.6f}, |diff| = {:.3e} "
                                        "<= {:.3e}",
                                        report.ensemble.renormalized.real(), report.born_position,
                                        report.abs_error, report.bound));
  console.verdict(prow.pass, fmt::format("<p>: momentum representation {:.9f} vs spectral {:.9f}",
                                         p_direct, p_born));
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

}  // namespace

std::string artifact_version() {
#ifdef BORNPHASE_VERSION
  return BORNPHASE_VERSION;
#else
  return "dev";
#endif
}

bool RunArtifacts::all_pass() const {
  for (const auto& row : rows) {
    if (!row.pass) return false;
  }
  return true;
}

RunArtifacts execute(const ExperimentConfig& config, std::ostream& console_stream, bool color) {
  Console console(console_stream, color);
  console.line(fmt::format("bornphase {} | experiment {} | seed {} | shots {}",
                           artifact_version(), to_string(config.experiment), config.seed,
                           config.n_shots));
  RunArtifacts out;
  switch (config.experiment) {
    case Experiment::kappa: run_kappa(out, console); break;
    case Experiment::born_check: run_born_check(config, out, console); break;
    case Experiment::sampler_compare: run_sampler_compare(config, out, console); break;
    case Experiment::weyl_test: run_weyl_test(config, out, console); break;
    case Experiment::te_scan: run_te_scan(config, out, console); break;
    case Experiment::free_particle: run_free_particle(config, out, console); break;
  }
  return out;
}

int run(const ExperimentConfig& config, std::ostream& console, bool color) {
  const auto started = std::chrono::steady_clock::now();
  const auto timestamp = utc_timestamp();
  const RunArtifacts artifacts = execute(config, console, color);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  const std::filesystem::path dir(config.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  const std::string csv = summary_csv(artifacts.rows);
  std::string manifest;
  manifest += fmt::format("# bornphase run manifest\n");
  manifest += fmt::format("schema = {}\n", kSummarySchema);
  manifest += fmt::format("columns = {}\n", kSummaryHeader);
  manifest += fmt::format("version = {}\n", artifact_version());
  manifest += fmt::format("started_utc = {}\n", timestamp);
  manifest += fmt::format("wall_clock_seconds = {:.3f}\n", seconds);
  manifest += fmt::format("experiment = {}\n", to_string(config.experiment));
  manifest += fmt::format("workers = {}\n", config.workers);
  manifest += "\n[config]\n";
  manifest += config.source_text;
  if (!config.source_text.empty() && config.source_text.back() != '\n') manifest += '\n';
  manifest += "\n[effective]\n";
  for (const auto& [key, value] : config.entries) manifest += key + " = " + value + "\n";
  manifest += "\n[notes]\n";
  for (const auto& note : artifacts.notes) manifest += note + "\n";
  manifest += "\n[summary]\n";
  manifest += csv;

  write_atomic(dir / "summary.csv", csv);
  write_atomic(dir / "shots.jsonl", artifacts.shots_jsonl);
  for (const auto& [name, contents] : artifacts.extra_tables) write_atomic(dir / name, contents);
  write_atomic(dir / "manifest.txt", manifest);
  return artifacts.all_pass() ? kExitOk : kExitToleranceFailure;
}

}  // namespace bornphase

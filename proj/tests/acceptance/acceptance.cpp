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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: acceptance <path to bornphase CLI>

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/test_support.hpp"
#include "bornphase/ensemble/ensemble.hpp"
#include "bornphase/lattice/fft.hpp"
#include "bornphase/lattice/lattice.hpp"
#include "bornphase/numeric/quadrature.hpp"

namespace bp = bornphase;
namespace fs = std::filesystem;
using bp::Complex;
using std::numbers::pi;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& title, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = seconds_since(t0);
  const bool in_budget = budget_s <= 0.0 || elapsed < budget_s;
  const bool pass = v.pass && in_budget;
  if (!pass) ++failures;
  const std::string budget = budget_s > 0.0 ? fmt::format(" < {:g} s", budget_s) : "";
  fmt::print("AC{} {} {} | {} | {:.2f} s{}\n", id, pass ? "PASS" : "FAIL", title, v.detail,
             elapsed, budget);
  std::fflush(stdout);
}

// (1/pi) int_0^pi sin(t)/t dt by a 1e7-panel midpoint sum in long double.
double riemann_kappa() {
  constexpr long n = 10'000'000;
  const long double h = std::numbers::pi_v<long double> / n;
  long double sum = 0.0L;
  for (long k = 0; k < n; ++k) {
    const long double t = (k + 0.5L) * h;
    sum += std::sin(t) / t;
  }
  return static_cast<double>(sum * h / std::numbers::pi_v<long double>);
}

bp::SpectralSystem diag_system(std::vector<double> e) {
  return bp::make_system(bp::ComplexMatrix::diagonal(e), 0.0);
}

bp::StateVector two_level_state() { return bp::StateVector({std::sqrt(0.8), std::sqrt(0.2)}); }

bp::Observable pauli_x() {
  return bp::Observable::from_matrix(bp::ComplexMatrix::from_rows({{0, 1}, {1, 0}}));
}

Verdict sinc_constant_check() {
  const auto t0 = std::chrono::steady_clock::now();
  const double kappa = bp::quadrature_sinc(pi, 1e-14) / pi;
  const double compute_s = seconds_since(t0);
  const double oracle = riemann_kappa();
  const double diff = std::abs(kappa - oracle);
  const bool pass = diff <= 1e-8 && std::abs(kappa - 0.5894898) <= 1e-7 && compute_s < 0.1;
  return {pass, fmt::format("kappa = {:.10f}, Riemann(1e7) = {:.10f}, |diff| = {:.2e} <= 1e-8, "
                            "quadrature {:.2e} s < 0.1 s",
                            kappa, oracle, diff, compute_s)};
}

Verdict born_recovery() {
  std::mt19937_64 gen(20260101);
  const double kappa = bp::sinc_constant();
  int closed_ok = 0;
  int mc_ok = 0;
  double worst_closed = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto t = bp::testing::random_triple(gen, 2 + std::size_t(i) % 15);
    const double born = bp::born_expectation(t.state, t.observable);
    const Complex closed = bp::closed_form_average(t.system, t.state, t.observable);
    const double cdiff = std::abs(closed - kappa * born);
    worst_closed = std::max(worst_closed, cdiff);
    if (cdiff <= 1e-10) ++closed_ok;
    bp::EnsembleConfig cfg;
    cfg.n_shots = 200'000;
    cfg.seed = 1000 + std::uint64_t(i);
    cfg.t_e = 0.5 * t.system.min_period();
    const auto r = bp::run_ensemble(t.system, t.state, t.observable, cfg);
    if (std::abs(r.renormalized - Complex(born)) <= 4.0 * r.stats.std_error / r.kappa) ++mc_ok;
  }
  return {closed_ok == 50 && mc_ok >= 47,
          fmt::format("closed form within 1e-10: {}/50 (worst {:.1e}); Monte Carlo n = 2e5 "
                      "within 4 stderr/kappa: {}/50 >= 47",
                      closed_ok, worst_closed, mc_ok)};
}

Verdict phase_free_collapse() {
  std::mt19937_64 gen(777);
  int ok = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto t = bp::testing::random_triple(gen, 2 + std::size_t(i) % 15);
    const bp::PhaseSample unit{bp::Sampler::paper_measure,
                               std::vector<bp::ModePhase>(t.state.dim())};
    const Complex s = bp::single_shot(t.system, t.state, t.observable, unit, 0.0);
    const double d = std::abs(s - Complex(bp::born_expectation(t.state, t.observable)));
    worst = std::max(worst, d);
    if (d <= 1e-9) ++ok;
  }
  return {ok == 200, fmt::format("{}/200 triples within 1e-9 (worst {:.1e})", ok, worst)};
}

Verdict convergence_rate() {
  const auto sys = diag_system({1.0, 2.0});
  std::vector<double> se;
  for (std::size_t n : {1000u, 10'000u, 100'000u}) {
    bp::EnsembleConfig cfg;
    cfg.n_shots = n;
    cfg.seed = 4;
    cfg.t_e = 1.0;
    se.push_back(bp::run_ensemble(sys, two_level_state(), pauli_x(), cfg).stats.std_error);
  }
  const double r1 = se[0] / se[1] / std::sqrt(10.0);
  const double r2 = se[1] / se[2] / std::sqrt(10.0);
  const auto within = [](double r) { return r >= 1.0 / 1.5 && r <= 1.5; };
  return {within(r1) && within(r2),
          fmt::format("stderr = {:.3e}, {:.3e}, {:.3e}; ratio / sqrt(10) = {:.3f}, {:.3f} in "
                      "[1/1.5, 1.5]",
                      se[0], se[1], se[2], r1, r2)};
}

Verdict weyl_uniformity() {
  const auto sys = diag_system({1.0, std::sqrt(2.0), std::sqrt(3.0)});
  const double window = 1e6 * sys.max_period();
  std::vector<bp::PhaseSample> samples;
  for (std::uint64_t s = 0; s < 10'000; ++s) {
    samples.push_back(bp::sample_absolute_time(bp::RngStream{31, s, 0}, sys, 0.0, window));
  }
  const auto ks = bp::weyl_uniformity(samples, sys);
  bool ks_ok = true;
  for (double d : ks) ks_ok = ks_ok && d <= 0.02;

  const auto state = bp::StateVector::normalized({1.0, Complex(0.5, 0.5), -0.7});
  const auto obs = bp::Observable::from_matrix(
      bp::ComplexMatrix::from_rows({{1, Complex(0.3, -0.2), 0}, {Complex(0.3, 0.2), -0.5, 0.4}, {0, 0.4, 2}}));
  bp::EnsembleConfig cfg;
  cfg.n_shots = 200'000;
  cfg.seed = 32;
  cfg.t_e = 0.25;
  cfg.sampler = bp::Sampler::absolute_time;
  cfg.window = window;
  const auto r = bp::run_ensemble(sys, state, obs, cfg);
  const double m = std::abs(r.stats.mean);
  const bool mean_ok = m <= 4.0 * r.stats.std_error;
  return {ks_ok && mean_ok,
          fmt::format("KS = {:.4f}, {:.4f}, {:.4f} <= 0.02; |raw mean| = {:.2e} <= 4 stderr = {:.2e} "
                      "(kappa <A> = {:.3f})",
                      ks[0], ks[1], ks[2], m, 4.0 * r.stats.std_error,
                      r.kappa * r.born_oracle)};
}

// Variance of exp(-i theta) for one mode with the clamped inner interval, drawn
// from std::mt19937_64 and independent of the library sampler.
double scalar_clamped_variance(double tau, double t_e, std::size_t n) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> outer(-0.5 * tau, 0.5 * tau);
  std::uniform_real_distribution<double> inner(0.0, 1.0);
  const double energy = 2 * pi / tau;
  long double re = 0, im = 0, sq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = outer(gen);
    const double reach = t_e < tau ? std::min(std::abs(dt), t_e) : std::abs(dt);
    const double theta = energy * std::copysign(inner(gen) * reach, dt);
    re += std::cos(theta);
    im += std::sin(theta);
  }
  const long double mr = re / n, mi = im / n;
  // E|z - mean|^2 = 1 - |mean|^2 for unit z.
  sq = 1.0L - (mr * mr + mi * mi);
  return double(sq * n / (n - 1));
}

Verdict deterministic_regime() {
  const double scalar_ratio = scalar_clamped_variance(1.0, 1e-3, 400'000) /
                              scalar_clamped_variance(1.0, 1.0, 400'000);
  const auto sys = diag_system({1.0, 2.0});
  const double tau_min = sys.min_period();
  const std::vector<double> ratios{0.0, 1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> t_e;
  for (double r : ratios) t_e.push_back(r * tau_min);
  const auto rows = bp::variance_scan(sys, two_level_state(), pauli_x(), t_e, 100'000, 6);
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i - 1].variance <= rows[i].variance;
  const bool zero = rows[0].variance == 0.0;
  const double ratio = rows[1].variance / rows[5].variance;
  return {monotone && zero && ratio <= 1e-4 && scalar_ratio <= 1e-4,
          fmt::format("monotone: {}; var(0) = {:g}; var(1e-3 tau_min) / var(tau_min) = {:.2e} <= 1e-4 "
                      "(scalar oracle {:.2e})",
                      monotone ? "yes" : "no", rows[0].variance, ratio, scalar_ratio)};
}

std::vector<Complex> reference_dft(const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double re = 0, im = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long double a = -2.0L * std::numbers::pi_v<long double> * ((j * k) % n) / n;
      re += x[j].real() * std::cos(a) - x[j].imag() * std::sin(a);
      im += x[j].real() * std::sin(a) + x[j].imag() * std::cos(a);
    }
    out[k] = Complex(double(re), double(im)) / std::sqrt(double(n));
  }
  return out;
}

Verdict lattice_chain() {
  std::mt19937_64 gen(41);
  double fft_err = 0.0;
  double parseval_err = 0.0;
  for (std::size_t n = 2; n <= 512; n *= 2) {
    const auto x = bp::testing::random_amplitudes(gen, n);
    const auto y = bp::fft_forward(x);
    const auto ref = reference_dft(x);
    for (std::size_t k = 0; k < n; ++k) fft_err = std::max(fft_err, std::abs(y[k] - ref[k]));
    parseval_err = std::max(parseval_err, std::abs(std::sqrt(bp::norm2(y)) - std::sqrt(bp::norm2(x))) /
                                              std::sqrt(bp::norm2(x)));
  }
  const bp::Lattice lattice(256, 64.0, 1.0);
  const auto packet = bp::gaussian_packet(lattice, 3.0, 4.0, 0.5);
  const auto rep = bp::position_measurement_chain(packet, lattice, 1.0, 100'000, 42, 1.0);
  return {fft_err <= 1e-10 && parseval_err <= 1e-11 && rep.pass,
          fmt::format("FFT vs DFT {:.1e} <= 1e-10; Parseval {:.1e} <= 1e-11; <x> Born {:.6f}, "
                      "mean/kappa {:.6f}, |diff| {:.2e} <= 4 stderr/kappa {:.2e}",
                      fft_err, parseval_err, rep.born_position, rep.ensemble.renormalized.real(),
                      rep.abs_error, rep.bound)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict reproducibility(const std::string& cli) {
  const fs::path root = fs::temp_directory_path() / "bornphase_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::vector<std::pair<std::string, std::string>> configs{
      {"kappa", "experiment = kappa\nseed = 1\nn_shots = 1\n"},
      {"born-check",
       "experiment = born-check\nseed = 42\nn_shots = 20000\nt_e = 0.7\n"
       "hamiltonian = 1 0.2; 0.2 2\nstate = 2 1i\nobservable = 0 1; 1 0\n"},
      {"sampler-compare",
       "experiment = sampler-compare\nseed = 5\nn_shots = 20000\nt_e = 0.3\n"
       "hamiltonian = 1 0 0; 0 1.4142135623730951 0; 0 0 1.7320508075688772\n"
       "state = 1 1 1\nobservable = 1 0.5 0; 0.5 0 0.5i; 0 -0.5i -1\n"},
      {"weyl-test",
       "experiment = weyl-test\nseed = 9\nn_shots = 10000\n"
       "hamiltonian = 1 0; 0 1.4142135623730951\n"},
      {"te-scan",
       "experiment = te-scan\nseed = 3\nn_shots = 20000\nt_e_over_tau_min = 0 0.001 0.1 1\n"
       "hamiltonian = 1 0; 0 2\nstate = 0.894427190999916 0.447213595499958\n"
       "observable = 0 1; 1 0\n"},
      {"free-particle",
       "experiment = free-particle\nseed = 8\nn_shots = 5000\nt_e = 1\nenergy_offset = 1\n"
       "lattice_sites = 64\nlattice_length = 32\npacket_width = 2\npacket_momentum = 0.4\n"}};
  int identical = 0;
  std::string detail;
  for (const auto& [name, text] : configs) {
    const fs::path cfg = root / (name + ".cfg");
    std::ofstream(cfg) << text;
    std::vector<std::string> summaries;
    std::vector<std::string> shots;
    bool ran = true;
    for (const char* workers : {"1", "2", "8", "1"}) {
      const fs::path out = root / (name + "_w" + workers + "_" + std::to_string(summaries.size()));
      const std::string cmd = fmt::format("NO_COLOR=1 \"{}\" {} --config \"{}\" --workers {} --out \"{}\" > /dev/null",
                                          cli, name, cfg.string(), workers, out.string());
      const int rc = std::system(cmd.c_str());
      if (rc != 0) ran = false;
      summaries.push_back(slurp(out / "summary.csv"));
      shots.push_back(slurp(out / "shots.jsonl"));
    }
    bool same = ran && !summaries[0].empty();
    for (std::size_t i = 1; i < summaries.size(); ++i) {
      same = same && summaries[i] == summaries[0] && shots[i] == shots[0];
    }
    if (same) ++identical;
    else detail += " " + name + (ran ? " differs" : " exited nonzero");
  }
  return {identical == int(configs.size()),
          fmt::format("{}/{} experiments byte-identical at workers 1, 2, 8 and on rerun{}",
                      identical, configs.size(), detail)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "bornphase";
  report(1, "sinc constant", 0.0, sinc_constant_check);
  report(2, "Born-rule recovery", 60.0, born_recovery);
  report(3, "phase-free collapse", 5.0, phase_free_collapse);
  report(4, "Monte Carlo convergence rate", 30.0, convergence_rate);
  report(5, "Weyl uniformity", 30.0, weyl_uniformity);
  report(6, "deterministic regime", 30.0, deterministic_regime);
  report(7, "lattice and FFT", 60.0, lattice_chain);
  report(8, "reproducibility", 0.0, [&] { return reproducibility(cli); });
  fmt::print("{} of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}

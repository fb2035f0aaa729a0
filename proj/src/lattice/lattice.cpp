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

#include "bornphase/lattice/lattice.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>

#include "bornphase/errors.hpp"
#include "bornphase/lattice/fft.hpp"

namespace bornphase {
namespace {

void require_size(const LatticeState& state, const Lattice& lattice) {
  if (state.amplitudes.size() != lattice.n_sites()) {
    throw DimensionError("lattice state has " + std::to_string(state.amplitudes.size()) +
                         " sites, lattice has " + std::to_string(lattice.n_sites()));
  }
}

void require_normalized(const LatticeState& state, const Lattice& lattice) {
  require_size(state, lattice);
  const double norm = lattice_norm(state, lattice);
  if (std::abs(norm - 1.0) > kBornNormTolerance) {
    throw NormalizationError("lattice state norm " + std::to_string(norm) +
                             " is not 1 within 1e-8");
  }
}

}  // namespace

Lattice::Lattice(std::size_t n_sites, double length, double mass)
    : n_sites_(n_sites), length_(length), mass_(mass) {
  if (!is_power_of_two(n_sites) || n_sites < kMinLatticeSites ||
      n_sites > kMaxLatticeSites) {
    throw SizeError("lattice size " + std::to_string(n_sites) +
                    " must be a power of two in [8, 4096]");
  }
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("lattice length must be > 0");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("particle mass must be > 0");
}

double Lattice::position(std::size_t site) const {
  return double(site) * spacing() - 0.5 * length_;
}

std::int64_t Lattice::signed_wavenumber(std::size_t bin) const {
  const auto k = static_cast<std::int64_t>(bin);
  const auto n = static_cast<std::int64_t>(n_sites_);
  return bin < n_sites_ / 2 ? k : k - n;
}

double Lattice::momentum(std::size_t bin) const {
  if (bin == n_sites_ / 2) return 0.0;  // Nyquist bin: +-pi/a are the same mode
  return 2.0 * std::numbers::pi * kHbar * double(signed_wavenumber(bin)) / length_;
}

double Lattice::momentum_cutoff() const { return std::numbers::pi * kHbar / spacing(); }
double Lattice::momentum_resolution() const { return 2.0 * std::numbers::pi * kHbar / length_; }

std::size_t Lattice::mode_bin(std::size_t mode) const {
  if (mode >= n_sites_) throw DimensionError("mode index out of range");
  if (mode == 0) return 0;
  if (mode == n_sites_ - 1) return n_sites_ / 2;
  const std::size_t j = (mode + 1) / 2;
  return mode % 2 == 1 ? j : n_sites_ - j;
}

double lattice_norm(const LatticeState& state, const Lattice& lattice) {
  require_size(state, lattice);
  return lattice.spacing() * norm2(state.amplitudes);
}

LatticeState dft_forward(const LatticeState& state) {
  return {fft_forward(state.amplitudes)};
}

LatticeState dft_inverse(const LatticeState& state) {
  return {fft_inverse(state.amplitudes)};
}

ComplexMatrix kinetic_matrix(const Lattice& lattice) {
  const std::size_t n = lattice.n_sites();
  const double a = lattice.spacing();
  const double diag = 1.0 / (lattice.mass() * a * a);
  ComplexMatrix h(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    h(j, j) = diag;
    h(j, (j + 1) % n) = -0.5 * diag;
    h((j + 1) % n, j) = -0.5 * diag;
  }
  return h;
}

SpectralSystem free_particle_system(const Lattice& lattice, double energy_offset) {
  const std::size_t n = lattice.n_sites();
  const double a = lattice.spacing();
  const double scale = 1.0 / (lattice.mass() * a * a);
  std::vector<double> energies(n);
  ComplexMatrix vectors(n, n);
  const double norm = 1.0 / std::sqrt(double(n));
  for (std::size_t mode = 0; mode < n; ++mode) {
    const std::size_t bin = lattice.mode_bin(mode);
    // Use min(k, N - k) so both members of a +-k pair get identical bits.
    const std::size_t folded = std::min(bin, n - bin);
    energies[mode] =
        scale * (1.0 - std::cos(2.0 * std::numbers::pi * double(folded) / double(n))) +
        energy_offset;
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = 2.0 * std::numbers::pi * double((bin * j) % n) / double(n);
      vectors(j, mode) = std::polar(norm, angle);
    }
  }
  // Plane waves are orthonormal by construction; the O(N^3) check is skipped.
  return make_system_from_spectrum(std::move(energies), std::move(vectors), energy_offset,
                                   /*verify_unitary=*/false);
}

StateVector lattice_to_energy_basis(const LatticeState& state, const Lattice& lattice) {
  require_normalized(state, lattice);
  std::vector<Complex> scaled = state.amplitudes;
  const double root_a = std::sqrt(lattice.spacing());
  for (auto& z : scaled) z *= root_a;
  FftPlan(lattice.n_sites()).forward(scaled);
  std::vector<Complex> coeffs(lattice.n_sites());
  for (std::size_t mode = 0; mode < coeffs.size(); ++mode) {
    coeffs[mode] = scaled[lattice.mode_bin(mode)];
  }
  return StateVector::normalized(std::move(coeffs), "lattice");
}

Observable position_observable(const Lattice& lattice) {
  const std::size_t n = lattice.n_sites();
  std::vector<Complex> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = lattice.position(j);
  // <v_p|X|v_q> = (1/N) sum_j x_j exp(-2 pi i (k_p - k_q) j / N)
  //             = FFT(x)[(k_p - k_q) mod N] / sqrt(N).
  const auto spectrum = fft_forward(x);
  const double inv_root_n = 1.0 / std::sqrt(double(n));
  ComplexMatrix m(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t kp = lattice.mode_bin(p);
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t kq = lattice.mode_bin(q);
      m(p, q) = spectrum[(kp + n - kq) % n] * inv_root_n;
    }
  }
  return Observable::from_matrix(m, 1e-10);
}

Observable momentum_observable(const Lattice& lattice) {
  const std::size_t n = lattice.n_sites();
  std::vector<double> p(n);
  for (std::size_t mode = 0; mode < n; ++mode) p[mode] = lattice.momentum(lattice.mode_bin(mode));
  return Observable::from_matrix(ComplexMatrix::diagonal(p));
}

LatticeState gaussian_packet(const Lattice& lattice, double center, double width,
                             double momentum) {
  if (!(width > 0.0)) throw DomainError("packet width must be > 0");
  LatticeState state{std::vector<Complex>(lattice.n_sites())};
  for (std::size_t j = 0; j < lattice.n_sites(); ++j) {
    const double x = lattice.position(j);
    const double envelope = std::exp(-(x - center) * (x - center) / (4.0 * width * width));
    state.amplitudes[j] = std::polar(envelope, momentum * x / kHbar);
  }
  const double norm = std::sqrt(lattice_norm(state, lattice));
  if (!(norm > 0.0)) throw NormalizationError("packet vanishes on the grid");
  for (auto& z : state.amplitudes) z /= norm;
  return state;
}

double position_expectation(const LatticeState& state, const Lattice& lattice) {
  require_normalized(state, lattice);
  double acc = 0.0;
  for (std::size_t j = 0; j < lattice.n_sites(); ++j) {
    acc += std::norm(state.amplitudes[j]) * lattice.position(j);
  }
  return lattice.spacing() * acc;
}

double momentum_measurement(const LatticeState& state, const Lattice& lattice) {
  require_normalized(state, lattice);
  const auto momentum_rep = dft_forward(state);
  double acc = 0.0;
  for (std::size_t k = 0; k < lattice.n_sites(); ++k) {
    acc += std::norm(momentum_rep.amplitudes[k]) * lattice.momentum(k);
  }
  return lattice.spacing() * acc;
}

PositionChainReport position_measurement_chain(const LatticeState& state,
                                               const Lattice& lattice, double t_e,
                                               std::size_t n_shots, std::uint64_t seed,
                                               double energy_offset, unsigned workers,
                                               bool keep_shots) {
  const SpectralSystem system = free_particle_system(lattice, energy_offset);
  const StateVector coeffs = lattice_to_energy_basis(state, lattice);
  const Observable x_hat = position_observable(lattice);

  PositionChainReport report;
  report.n_sites = lattice.n_sites();
  report.length = lattice.length();
  report.spacing = lattice.spacing();
  report.mass = lattice.mass();
  report.energy_offset = energy_offset;
  report.momentum_cutoff = lattice.momentum_cutoff();
  report.momentum_resolution = lattice.momentum_resolution();

  EnsembleConfig config;
  config.t_e = t_e;
  config.n_shots = n_shots;
  config.sampler = Sampler::paper_measure;
  config.seed = seed;
  config.workers = workers;
  config.keep_shots = keep_shots;
  report.ensemble = run_ensemble(system, coeffs, x_hat, config);
  report.born_position = report.ensemble.born_oracle;
  report.abs_error = std::abs(report.ensemble.renormalized - Complex(report.born_position));
  report.bound = 4.0 * report.ensemble.stats.std_error / report.ensemble.kappa;
  report.pass = report.abs_error <= report.bound;
  return report;
}

std::string serialize_lattice_state(const LatticeState& state) {
  std::string out;
  for (std::size_t j = 0; j < state.amplitudes.size(); ++j) {
    out += fmt::format("{} {:.17g} {:.17g}\n", j, state.amplitudes[j].real(),
                       state.amplitudes[j].imag());
  }
  return out;
}

LatticeState parse_lattice_state(std::string_view text) {
  std::map<std::size_t, Complex> sites;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;

    std::size_t index = 0;
    double re = 0.0;
    double im = 0.0;
    const char* p = line.data() + first;
    const char* stop = line.data() + line.size();
    auto skip = [&] { while (p < stop && (*p == ' ' || *p == '\t' || *p == '\r')) ++p; };
    auto bad = [&] { throw ParseError("line " + std::to_string(line_no) + ": expected '<site> <re> <im>'"); };
    auto r1 = std::from_chars(p, stop, index);
    if (r1.ec != std::errc{}) bad();
    p = r1.ptr;
    skip();
    auto r2 = std::from_chars(p, stop, re);
    if (r2.ec != std::errc{}) bad();
    p = r2.ptr;
    skip();
    auto r3 = std::from_chars(p, stop, im);
    if (r3.ec != std::errc{}) bad();
    p = r3.ptr;
    skip();
    if (p != stop) bad();
    if (!sites.emplace(index, Complex{re, im}).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate site");
    }
  }
  LatticeState state{std::vector<Complex>(sites.size())};
  for (const auto& [index, value] : sites) {
    if (index >= sites.size()) throw ParseError("site indices must be 0..n-1");
    state.amplitudes[index] = value;
  }
  return state;
}

}  // namespace bornphase

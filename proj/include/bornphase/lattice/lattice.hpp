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
#include <string>
#include <string_view>
#include <vector>

#include "bornphase/born/observable.hpp"
#include "bornphase/ensemble/ensemble.hpp"
#include "bornphase/numeric/matrix.hpp"
#include "bornphase/quantum/system.hpp"

namespace bornphase {

inline constexpr std::size_t kMinLatticeSites = 8;
inline constexpr std::size_t kMaxLatticeSites = 4096;

/// Periodic 1-D grid for a free particle.
///
/// Sites sit at x_j = j a - L/2 (a = L/N), so the grid is centered on 0 and
/// site N/2 is the origin. Momentum bin k carries p_k = 2 pi k_s / L with
/// k_s the signed index in [-N/2, N/2); the Nyquist bin N/2 carries p = 0 so
/// the momentum operator keeps exact parity.
class Lattice {
 public:
  Lattice(std::size_t n_sites, double length, double mass);

  std::size_t n_sites() const noexcept { return n_sites_; }
  double length() const noexcept { return length_; }
  double mass() const noexcept { return mass_; }
  double spacing() const noexcept { return length_ / double(n_sites_); }

  double position(std::size_t site) const;
  std::int64_t signed_wavenumber(std::size_t bin) const;
  double momentum(std::size_t bin) const;

  /// Largest resolvable |p| (pi / a) and the momentum grid step (2 pi / L).
  double momentum_cutoff() const;
  double momentum_resolution() const;

  /// DFT bin of energy mode n. Modes ascend in energy: bin 0, then the
  /// degenerate pairs (1, N-1), (2, N-2), ..., and finally N/2.
  std::size_t mode_bin(std::size_t mode) const;

 private:
  std::size_t n_sites_;
  double length_;
  double mass_;
};

/// Wavefunction samples psi(x_j), normalized as a * sum_j |psi_j|^2 = 1.
struct LatticeState {
  std::vector<Complex> amplitudes;
};

inline constexpr double kLatticeNormTolerance = 1e-10;

double lattice_norm(const LatticeState& state, const Lattice& lattice);

/// Unitary FFT of the amplitudes (position -> momentum representation).
LatticeState dft_forward(const LatticeState& state);
LatticeState dft_inverse(const LatticeState& state);

/// Nearest-neighbour (3-point Laplacian) kinetic operator in the site basis:
/// diagonal 1/(m a^2), hopping -1/(2 m a^2), periodic wrap.
ComplexMatrix kinetic_matrix(const Lattice& lattice);

/// Free-particle system with plane-wave eigenvectors and energies
/// E_k = (1 - cos(2 pi k / N)) / (m a^2) + offset. Degenerate pairs +-k get
/// bit-identical energies. Requires offset > 0 for the k = 0 mode.
SpectralSystem free_particle_system(const Lattice& lattice, double energy_offset);

/// Energy-basis coefficients of a lattice state (c_n = <v_n|sqrt(a) psi>).
StateVector lattice_to_energy_basis(const LatticeState& state, const Lattice& lattice);

/// Position and momentum operators in the energy eigenbasis of
/// free_particle_system (same mode ordering).
Observable position_observable(const Lattice& lattice);
Observable momentum_observable(const Lattice& lattice);

/// Normalized packet exp(-(x - center)^2 / (4 width^2)) exp(i momentum x).
LatticeState gaussian_packet(const Lattice& lattice, double center, double width,
                             double momentum);

/// a * sum_j |psi_j|^2 x_j, computed in the site basis.
double position_expectation(const LatticeState& state, const Lattice& lattice);

/// sum_k |psi~_k|^2 a p_k from the momentum representation.
double momentum_measurement(const LatticeState& state, const Lattice& lattice);

struct PositionChainReport {
  std::size_t n_sites = 0;
  double length = 0.0;
  double spacing = 0.0;
  double mass = 0.0;
  double energy_offset = 0.0;
  double momentum_cutoff = 0.0;      // UV truncation
  double momentum_resolution = 0.0;  // IR truncation
  double born_position = 0.0;        // <x> from the Born oracle
  EnsembleResult ensemble;
  double abs_error = 0.0;  // |renormalized - <x>|
  double bound = 0.0;      // 4 stderr / kappa
  bool pass = false;
};

/// Runs the phase ensemble with the position observable on the free-particle
/// system and compares mean / kappa to <x>.
PositionChainReport position_measurement_chain(const LatticeState& state,
                                               const Lattice& lattice, double t_e,
                                               std::size_t n_shots, std::uint64_t seed,
                                               double energy_offset = 1.0,
                                               unsigned workers = 1, bool keep_shots = false);

/// "<site> <re> <im>" per line, 17 significant digits.
std::string serialize_lattice_state(const LatticeState& state);
LatticeState parse_lattice_state(std::string_view text);

}  // namespace bornphase

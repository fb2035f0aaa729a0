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
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bornphase/numeric/matrix.hpp"

namespace bornphase {

// Natural units: hbar = 1, so h = 2 pi and the period of mode n is 2 pi / E_n.
inline constexpr double kHbar = 1.0;
inline constexpr double kPlanck = 2.0 * std::numbers::pi * kHbar;

/// Smallest admissible energy after the offset is applied.
inline constexpr double kMinEnergy = 1e-9;
/// Relative tolerance (to max E) under which two energies count as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-12;

/// Time-independent Hamiltonian in spectral form.
///
/// Energies are strictly positive and ascending; periods are derived from
/// them and never set independently. Degenerate energies are grouped so that
/// phase samplers can give every member of a group the same residues.
class SpectralSystem {
 public:
  std::size_t dim() const noexcept { return energies_.size(); }
  std::span<const double> energies() const noexcept { return energies_; }
  std::span<const double> periods() const noexcept { return periods_; }
  const ComplexMatrix& eigenvectors() const noexcept { return eigenvectors_; }
  double energy_offset() const noexcept { return energy_offset_; }

  double energy(std::size_t n) const { return energies_.at(n); }
  double period(std::size_t n) const { return periods_.at(n); }
  double min_period() const { return periods_.back(); }
  double max_period() const { return periods_.front(); }

  /// Index of the first mode in the degeneracy group of mode n.
  std::size_t group_representative(std::size_t n) const { return representative_.at(n); }
  bool has_degeneracies() const noexcept { return has_degeneracies_; }

  /// The Hamiltonian in the energy eigenbasis, diag(E).
  ComplexMatrix energy_basis_hamiltonian() const;

 private:
  friend SpectralSystem make_system_from_spectrum(std::vector<double>, ComplexMatrix,
                                                  double, bool);
  SpectralSystem() = default;

  std::vector<double> energies_;
  std::vector<double> periods_;
  ComplexMatrix eigenvectors_;
  double energy_offset_ = 0.0;
  std::vector<std::size_t> representative_;
  bool has_degeneracies_ = false;
};

/// Diagonalizes hamiltonian + energy_offset * I. Throws SpectrumError if the
/// smallest shifted eigenvalue is not above kMinEnergy.
SpectralSystem make_system(const ComplexMatrix& hamiltonian, double energy_offset);

/// Builds a system from known spectral data. `energies` must already include
/// the offset (which is only recorded). With `verify_unitary`, the columns
/// are checked for orthonormality within 1e-10.
SpectralSystem make_system_from_spectrum(std::vector<double> energies,
                                         ComplexMatrix eigenvectors,
                                         double energy_offset,
                                         bool verify_unitary = true);

/// Normalized state given by its coefficients c_n in the energy eigenbasis.
class StateVector {
 public:
  /// Throws NormalizationError unless sum |c_n|^2 = 1 within 1e-10.
  explicit StateVector(std::vector<Complex> amplitudes, std::string label = {});

  /// Rescales to unit norm; throws NormalizationError for a zero vector.
  static StateVector normalized(std::vector<Complex> amplitudes, std::string label = {});

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t n) const { return amplitudes_[n]; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::vector<Complex> amplitudes_;
  std::string label_;
};

inline constexpr double kStateNormTolerance = 1e-10;

/// c_n <- c_n exp(-i E_n t).
StateVector evolve(const SpectralSystem& system, const StateVector& state, double t);

/// U_t(delta) psi(t) = psi(t - delta), i.e. evolve by -delta.
StateVector time_shift(const SpectralSystem& system, const StateVector& state_at_t,
                       double delta);

/// Coefficients B^dagger a of a state with amplitudes `a` in the basis whose
/// columns are B. Throws BasisError if B is not unitary within 1e-10.
std::vector<Complex> expansion_coefficients(const StateVector& state,
                                            const ComplexMatrix& basis);

}  // namespace bornphase

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

#include "bornphase/quantum/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bornphase/errors.hpp"
#include "bornphase/numeric/eigen.hpp"

namespace bornphase {
namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kUnitaryTolerance = 1e-10;

void require_dims(const SpectralSystem& system, const StateVector& state) {
  if (system.dim() != state.dim()) {
    throw DimensionError("state dimension " + std::to_string(state.dim()) +
                         " does not match system dimension " +
                         std::to_string(system.dim()));
  }
}

}  // namespace

ComplexMatrix SpectralSystem::energy_basis_hamiltonian() const {
  return ComplexMatrix::diagonal(energies_);
}

SpectralSystem make_system_from_spectrum(std::vector<double> energies,
                                         ComplexMatrix eigenvectors,
                                         double energy_offset, bool verify_unitary) {
  const std::size_t n = energies.size();
  if (n == 0) throw DimensionError("system needs at least one mode");
  if (eigenvectors.rows() != n || eigenvectors.cols() != n) {
    throw DimensionError("eigenvector matrix must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(energies[k])) throw SpectrumError("non-finite energy");
    if (k > 0 && energies[k] < energies[k - 1]) {
      throw SpectrumError("energies must be sorted ascending");
    }
  }
  if (!(energies.front() > kMinEnergy)) {
    throw SpectrumError("lowest energy " + std::to_string(energies.front()) +
                        " is not positive; periods 2 pi / E_n need E_n > 0, "
                        "increase energy_offset by at least " +
                        std::to_string(kMinEnergy - energies.front()));
  }
  if (verify_unitary) {
    const double defect = unitarity_defect(eigenvectors);
    if (defect > kUnitaryTolerance) {
      throw BasisError("eigenvectors are not orthonormal: defect " +
                       std::to_string(defect));
    }
  }

  SpectralSystem system;
  system.periods_.resize(n);
  for (std::size_t k = 0; k < n; ++k) system.periods_[k] = kPlanck / energies[k];
  system.representative_.resize(n);
  const double tol = kDegeneracyTolerance * energies.back();
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && energies[k] - energies[system.representative_[k - 1]] <= tol) {
      system.representative_[k] = system.representative_[k - 1];
      system.has_degeneracies_ = true;
    } else {
      system.representative_[k] = k;
    }
  }
  system.energies_ = std::move(energies);
  system.eigenvectors_ = std::move(eigenvectors);
  system.energy_offset_ = energy_offset;
  return system;
}

SpectralSystem make_system(const ComplexMatrix& hamiltonian, double energy_offset) {
  if (!std::isfinite(energy_offset)) throw DomainError("energy_offset must be finite");
  if (!hamiltonian.is_square()) {
    throw DimensionError("Hamiltonian must be square");
  }
  ComplexMatrix shifted = hamiltonian;
  for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += energy_offset;
  auto eig = hermitian_eigendecompose(shifted, kHermitianTolerance);
  return make_system_from_spectrum(std::move(eig.eigenvalues),
                                   std::move(eig.eigenvectors), energy_offset);
}

StateVector::StateVector(std::vector<Complex> amplitudes, std::string label)
    : amplitudes_(std::move(amplitudes)), label_(std::move(label)) {
  if (amplitudes_.empty()) throw DimensionError("state needs at least one amplitude");
  for (const auto& c : amplitudes_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw NormalizationError("state has non-finite amplitudes");
    }
  }
  const double norm = norm2(amplitudes_);
  if (std::abs(norm - 1.0) > kStateNormTolerance) {
    throw NormalizationError("state norm^2 " + std::to_string(norm) +
                             " differs from 1 by more than 1e-10");
  }
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes, std::string label) {
  const double norm = std::sqrt(norm2(amplitudes));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw NormalizationError("cannot normalize a zero or non-finite vector");
  }
  for (auto& c : amplitudes) c /= norm;
  return StateVector(std::move(amplitudes), std::move(label));
}

StateVector evolve(const SpectralSystem& system, const StateVector& state, double t) {
  require_dims(system, state);
  std::vector<Complex> out(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] *= std::polar(1.0, -system.energy(n) * t / kHbar);
  }
  return StateVector(std::move(out), state.label());
}

StateVector time_shift(const SpectralSystem& system, const StateVector& state_at_t,
                       double delta) {
  return evolve(system, state_at_t, -delta);
}

std::vector<Complex> expansion_coefficients(const StateVector& state,
                                            const ComplexMatrix& basis) {
  if (basis.rows() != state.dim() || basis.cols() != state.dim()) {
    throw DimensionError("basis must be square with the state's dimension");
  }
  const double defect = unitarity_defect(basis);
  if (defect > kUnitaryTolerance) {
    throw BasisError("basis is not unitary: ||B^dagger B - I|| = " +
                     std::to_string(defect));
  }
  std::vector<Complex> out(state.dim());
  for (std::size_t k = 0; k < state.dim(); ++k) {
    Complex acc = 0.0;
    for (std::size_t r = 0; r < state.dim(); ++r) {
      acc += std::conj(basis(r, k)) * state[r];
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace bornphase

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

#include <span>
#include <vector>

#include "bornphase/numeric/matrix.hpp"
#include "bornphase/quantum/system.hpp"

namespace bornphase {

/// Hermitian observable expressed in the energy eigenbasis of a system.
///
/// Spectral data (eigenvalues a_m, eigenvectors Phi_m) is always computed
/// from the matrix, so the two views cannot disagree.
class Observable {
 public:
  /// Symmetrizes and diagonalizes `matrix`; throws SymmetryError if it is not
  /// Hermitian within `tol` (relative Frobenius).
  static Observable from_matrix(const ComplexMatrix& matrix, double tol = 1e-12);

  std::size_t dim() const noexcept { return eigenvalues_.size(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  const ComplexMatrix& eigenbasis() const noexcept { return eigenbasis_; }

 private:
  Observable() = default;
  ComplexMatrix matrix_;
  std::vector<double> eigenvalues_;
  ComplexMatrix eigenbasis_;
};

struct Outcome {
  double value = 0.0;
  double probability = 0.0;
};

/// Outcome probabilities indexed by distinct eigenvalue.
struct OutcomeDistribution {
  std::vector<Outcome> outcomes;

  double mean() const;
  double total_probability() const;
};

/// Normalization slack accepted by the Born routines.
inline constexpr double kBornNormTolerance = 1e-8;
/// Relative gap below which observable eigenvalues share one outcome.
inline constexpr double kOutcomeMergeTolerance = 1e-9;

/// <psi|A|psi>. The imaginary residue is checked (<= 1e-10 ||A||) and dropped.
double born_expectation(const StateVector& state, const Observable& obs);

/// |<Phi_m|psi>|^2 aggregated per distinct eigenvalue, ascending by value.
OutcomeDistribution outcome_distribution(const StateVector& state, const Observable& obs);

/// True iff ||A H - H A||_F <= tol, with H = diag(E) in the energy basis.
bool commuting_basis_check(const SpectralSystem& system, const Observable& obs,
                           double tol);

}  // namespace bornphase

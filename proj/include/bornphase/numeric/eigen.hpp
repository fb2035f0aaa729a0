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
#include <vector>

#include "bornphase/numeric/matrix.hpp"

namespace bornphase {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // orthonormal columns, same order
  int sweeps = 0;
};

inline constexpr std::size_t kMaxEigenDimension = 1024;
inline constexpr int kMaxJacobiSweeps = 100;

/// ||A - A^dagger||_F.
double hermiticity_defect(const ComplexMatrix& a);

/// Returns (A + A^dagger) / 2 after checking ||A - A^dagger||_F <= tol ||A||_F.
/// Throws DimensionError for non-square input and SymmetryError otherwise.
ComplexMatrix symmetrize_hermitian(const ComplexMatrix& a, double tol);

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// The input is symmetrized first, then swept with unitary plane rotations
/// until the off-diagonal Frobenius mass drops below 1e-14 ||A||_F. The
/// accumulated rotations form the eigenvector matrix, so it is unitary to
/// round-off regardless of spectral clustering. Eigenvalues are returned in
/// ascending order; equal eigenvalues keep the order of the converged basis.
EigenDecomposition hermitian_eigendecompose(const ComplexMatrix& a, double tol);

}  // namespace bornphase

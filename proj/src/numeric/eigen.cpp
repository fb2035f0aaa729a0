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

#include "bornphase/numeric/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bornphase/errors.hpp"

namespace bornphase {
namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) acc += std::norm(a(i, j));
    }
  }
  return std::sqrt(acc);
}

// Zeroes a(p, q) with the unitary rotation acting on columns p and q.
// With a(p, q) = |a_pq| e^{i phi}, the block is first made real by the phase
// e^{-i phi} on basis vector q, then rotated with the usual real Jacobi angle.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double magnitude = std::abs(apq);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * magnitude);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex phase = apq / magnitude;  // e^{i phi}
  const Complex conj_phase = std::conj(phase);

  // Rotation U restricted to (p, q):
  //   U(p,p) = c,            U(p,q) = s
  //   U(q,p) = -s e^{-i phi}, U(q,q) = c e^{-i phi}
  const Complex upp = c;
  const Complex upq = s;
  const Complex uqp = -s * conj_phase;
  const Complex uqq = c * conj_phase;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {  // A <- A U
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  for (std::size_t k = 0; k < n; ++k) {  // A <- U^dagger A
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {  // V <- V U
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * upp + vkq * uqp;
    v(k, q) = vkp * upq + vkq * uqq;
  }
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& a) {
  if (!a.is_square()) {
    throw DimensionError("expected a square matrix, got " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      acc += std::norm(a(i, j) - std::conj(a(j, i)));
    }
  }
  return std::sqrt(acc);
}

ComplexMatrix symmetrize_hermitian(const ComplexMatrix& a, double tol) {
  const double defect = hermiticity_defect(a);
  const double scale = a.frobenius_norm();
  if (!a.all_finite()) throw DomainError("matrix has non-finite entries");
  if (defect > tol * scale) {
    throw SymmetryError("matrix is not Hermitian: ||A - A^dagger|| = " +
                        std::to_string(defect) + " exceeds " +
                        std::to_string(tol * scale));
  }
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const Complex mean = 0.5 * (a(i, j) + std::conj(a(j, i)));
      out(i, j) = mean;
      out(j, i) = std::conj(mean);
    }
  }
  return out;
}

EigenDecomposition hermitian_eigendecompose(const ComplexMatrix& input, double tol) {
  ComplexMatrix a = symmetrize_hermitian(input, tol);
  const std::size_t n = a.rows();
  if (n > kMaxEigenDimension) {
    throw DimensionError("eigensolver supports dimension <= " +
                         std::to_string(kMaxEigenDimension));
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.frobenius_norm();
  const double target = 1e-14 * scale;
  // Elements this small relative to the matrix are dropped rather than rotated.
  const double negligible = 1e-18 * scale;

  int sweeps = 0;
  double off = off_diagonal_norm(a);
  while (off > target) {
    if (sweeps == kMaxJacobiSweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge in " +
                                 std::to_string(kMaxJacobiSweeps) +
                                 " sweeps; off-diagonal residual " +
                                 std::to_string(off),
                             off);
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= negligible) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  out.sweeps = sweeps;
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace bornphase

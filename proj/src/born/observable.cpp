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

#include "bornphase/born/observable.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bornphase/errors.hpp"
#include "bornphase/numeric/eigen.hpp"

namespace bornphase {
namespace {

void require_compatible(const StateVector& state, const Observable& obs) {
  if (state.dim() != obs.dim()) {
    throw DimensionError("state dimension " + std::to_string(state.dim()) +
                         " does not match observable dimension " +
                         std::to_string(obs.dim()));
  }
  const double norm = norm2(state.amplitudes());
  if (std::abs(norm - 1.0) > kBornNormTolerance) {
    throw NormalizationError("state norm^2 " + std::to_string(norm) +
                             " is not 1 within 1e-8");
  }
}

}  // namespace

Observable Observable::from_matrix(const ComplexMatrix& matrix, double tol) {
  Observable obs;
  obs.matrix_ = symmetrize_hermitian(matrix, tol);
  auto eig = hermitian_eigendecompose(obs.matrix_, tol);
  obs.eigenvalues_ = std::move(eig.eigenvalues);
  obs.eigenbasis_ = std::move(eig.eigenvectors);
  return obs;
}

double OutcomeDistribution::mean() const {
  double acc = 0.0;
  for (const auto& o : outcomes) acc += o.value * o.probability;
  return acc;
}

double OutcomeDistribution::total_probability() const {
  double acc = 0.0;
  for (const auto& o : outcomes) acc += o.probability;
  return acc;
}

double born_expectation(const StateVector& state, const Observable& obs) {
  require_compatible(state, obs);
  const auto a_psi = obs.matrix().apply(state.amplitudes());
  const Complex value = inner_product(state.amplitudes(), a_psi);
  const double scale = std::max(1.0, obs.matrix().frobenius_norm());
  if (std::abs(value.imag()) > 1e-10 * scale) {
    throw DomainError("Born expectation has imaginary residue " +
                      std::to_string(value.imag()));
  }
  return value.real();
}

OutcomeDistribution outcome_distribution(const StateVector& state, const Observable& obs) {
  require_compatible(state, obs);
  const auto& phi = obs.eigenbasis();
  const auto values = obs.eigenvalues();
  const std::size_t n = obs.dim();

  std::vector<double> probabilities(n);
  for (std::size_t m = 0; m < n; ++m) {
    Complex b = 0.0;
    for (std::size_t r = 0; r < n; ++r) b += std::conj(phi(r, m)) * state[r];
    probabilities[m] = std::norm(b);
  }

  double max_abs = 0.0;
  for (double a : values) max_abs = std::max(max_abs, std::abs(a));
  const double merge = kOutcomeMergeTolerance * max_abs;

  // Groups of consecutive (ascending) eigenvalues within `merge` of the first
  // member; each group reports its probability-weighted value so that the
  // distribution mean is unchanged by merging.
  OutcomeDistribution dist;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && values[end] - values[start] <= merge) ++end;
    double p = 0.0;
    double weighted = 0.0;
    double plain = 0.0;
    for (std::size_t m = start; m < end; ++m) {
      p += probabilities[m];
      weighted += probabilities[m] * values[m];
      plain += values[m];
    }
    const double value = p > 0.0 ? weighted / p : plain / static_cast<double>(end - start);
    dist.outcomes.push_back({value, p});
    start = end;
  }
  return dist;
}

bool commuting_basis_check(const SpectralSystem& system, const Observable& obs,
                           double tol) {
  if (system.dim() != obs.dim()) {
    throw DimensionError("observable and system dimensions differ");
  }
  double acc = 0.0;
  const auto& a = obs.matrix();
  for (std::size_t i = 0; i < obs.dim(); ++i) {
    for (std::size_t j = 0; j < obs.dim(); ++j) {
      acc += std::norm(a(i, j) * (system.energy(j) - system.energy(i)));
    }
  }
  return std::sqrt(acc) <= tol;
}

}  // namespace bornphase

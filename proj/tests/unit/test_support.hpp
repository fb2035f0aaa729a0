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

#include <cmath>
#include <random>
#include <vector>

#include "bornphase/born/observable.hpp"
#include "bornphase/numeric/matrix.hpp"
#include "bornphase/quantum/system.hpp"

namespace bornphase::testing {

inline ComplexMatrix random_hermitian(std::mt19937_64& gen, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = g(gen);
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = Complex(g(gen), g(gen));
      a(j, i) = std::conj(a(i, j));
    }
  }
  return a;
}

inline std::vector<Complex> random_amplitudes(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& x : v) x = Complex(g(gen), g(gen));
  return v;
}

inline StateVector random_state(std::mt19937_64& gen, std::size_t n) {
  return StateVector::normalized(random_amplitudes(gen, n));
}

struct Triple {
  SpectralSystem system;
  StateVector state;
  Observable observable;
};

// Random (system, state, observable) with the spectrum shifted positive.
inline Triple random_triple(std::mt19937_64& gen, std::size_t n) {
  auto h = random_hermitian(gen, n);
  auto system = make_system(h, 2.0 * h.frobenius_norm() + 1.0);
  return {std::move(system), random_state(gen, n),
          Observable::from_matrix(random_hermitian(gen, n))};
}

// <c|A|c> by direct matrix arithmetic.
inline Complex matrix_expectation(const ComplexMatrix& a, std::span<const Complex> c) {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) sum += std::conj(c[i]) * a(i, j) * c[j];
  }
  return sum;
}

}  // namespace bornphase::testing

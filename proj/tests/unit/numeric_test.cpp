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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bornphase/errors.hpp"
#include "bornphase/numeric/eigen.hpp"
#include "bornphase/numeric/ks.hpp"
#include "bornphase/numeric/matrix.hpp"
#include "bornphase/numeric/quadrature.hpp"
#include "bornphase/numeric/rng.hpp"
#include "bornphase/numeric/summation.hpp"
#include "test_support.hpp"

namespace bornphase {
namespace {

using testing::random_hermitian;

// Midpoint rule with 1e7 panels, long double accumulation.
double riemann_sinc(double upper) {
  constexpr long n = 10'000'000;
  const long double h = static_cast<long double>(upper) / n;
  long double sum = 0.0L;
  for (long k = 0; k < n; ++k) {
    const long double t = (k + 0.5L) * h;
    sum += std::sin(t) / t;
  }
  return static_cast<double>(sum * h);
}

TEST(Matrix, RejectsEmptyDimensions) {
  EXPECT_THROW(ComplexMatrix(0, 3), DimensionError);
}

TEST(Matrix, InnerProductIsConjugateLinearInFirstArgument) {
  const std::vector<Complex> a{{0, 1}, {1, 0}};
  const std::vector<Complex> b{{0, 1}, {0, 0}};
  EXPECT_EQ(inner_product(a, b), Complex(1, 0));
}

TEST(Matrix, ProductAndAdjoint) {
  const auto a = ComplexMatrix::from_rows({{1, Complex(0, 2)}, {3, 4}});
  const auto p = a * a.adjoint();
  EXPECT_DOUBLE_EQ(p(0, 0).real(), 5.0);
  EXPECT_EQ(p(0, 1), std::conj(p(1, 0)));
}

TEST(Eigen, IdentityGivesUnitEigenvalues) {
  const auto d = hermitian_eigendecompose(ComplexMatrix::identity(3), 1e-12);
  for (double e : d.eigenvalues) EXPECT_DOUBLE_EQ(e, 1.0);
  EXPECT_LE(unitarity_defect(d.eigenvectors), 1e-12);
}

TEST(Eigen, DiagonalSortsAscending) {
  const std::vector<double> diag{2.0, 1.0};
  const auto d = hermitian_eigendecompose(ComplexMatrix::diagonal(diag), 1e-12);
  EXPECT_DOUBLE_EQ(d.eigenvalues[0], 1.0);
  EXPECT_DOUBLE_EQ(d.eigenvalues[1], 2.0);
  EXPECT_DOUBLE_EQ(std::abs(d.eigenvectors(1, 0)), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(d.eigenvectors(0, 1)), 1.0);
}

TEST(Eigen, PauliX) {
  const auto d = hermitian_eigendecompose(ComplexMatrix::from_rows({{0, 1}, {1, 0}}), 1e-12);
  EXPECT_NEAR(d.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(d.eigenvalues[1], 1.0, 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  // Columns are (1, -1)/sqrt2 and (1, 1)/sqrt2 up to a global phase.
  EXPECT_NEAR(std::abs(d.eigenvectors(0, 0) + d.eigenvectors(1, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(d.eigenvectors(0, 1) - d.eigenvectors(1, 1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(d.eigenvectors(0, 0)), r, 1e-14);
}

TEST(Eigen, ErrorPaths) {
  EXPECT_THROW(hermitian_eigendecompose(ComplexMatrix(2, 3), 1e-12), DimensionError);
  EXPECT_THROW(hermitian_eigendecompose(ComplexMatrix::from_rows({{1, 2}, {0, 1}}), 1e-12),
               SymmetryError);
  auto bad = ComplexMatrix::identity(2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(hermitian_eigendecompose(bad, 1e-12), DomainError);
}

TEST(Eigen, SymmetrizesWithinTolerance) {
  auto a = ComplexMatrix::from_rows({{1, Complex(0.5, 1e-13)}, {0.5, 2}});
  const auto s = symmetrize_hermitian(a, 1e-12);
  EXPECT_EQ(hermiticity_defect(s), 0.0);
}

TEST(Eigen, RandomRoundTripAndUnitarity) {
  std::mt19937_64 gen(7);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 16u, 33u, 64u}) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto a = random_hermitian(gen, n);
      const auto d = hermitian_eigendecompose(a, 1e-12);
      const auto lambda = ComplexMatrix::diagonal(d.eigenvalues);
      const auto back = d.eigenvectors * lambda * d.eigenvectors.adjoint();
      EXPECT_LE((back - a).frobenius_norm(), 1e-9 * a.frobenius_norm()) << "n = " << n;
      EXPECT_LE(unitarity_defect(d.eigenvectors), 1e-10) << "n = " << n;
      for (std::size_t i = 1; i < n; ++i) EXPECT_LE(d.eigenvalues[i - 1], d.eigenvalues[i]);
    }
  }
}

TEST(Eigen, DegenerateSpectrum) {
  std::mt19937_64 gen(3);
  // U diag(1,1,2,2) U^dagger with a random unitary U.
  const auto u = hermitian_eigendecompose(random_hermitian(gen, 4), 1e-12).eigenvectors;
  const std::vector<double> lam{1, 1, 2, 2};
  const auto a = u * ComplexMatrix::diagonal(lam) * u.adjoint();
  const auto d = hermitian_eigendecompose(a, 1e-10);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(d.eigenvalues[i], lam[i], 1e-12);
  EXPECT_LE(unitarity_defect(d.eigenvectors), 1e-10);
}

TEST(Quadrature, SincBasics) {
  EXPECT_EQ(sinc(0.0), 1.0);
  EXPECT_EQ(quadrature_sinc(0.0, 1e-12), 0.0);
  EXPECT_THROW(quadrature_sinc(-1.0, 1e-12), DomainError);
}

TEST(Quadrature, MatchesRiemannOracle) {
  const double oracle = riemann_sinc(std::numbers::pi);
  const double value = quadrature_sinc(std::numbers::pi, 1e-13);
  EXPECT_NEAR(value, oracle, 1e-8);
  EXPECT_NEAR(value, 1.8519370, 1e-7);
  EXPECT_NEAR(sinc_constant(), oracle / std::numbers::pi, 1e-8);
  EXPECT_NEAR(sinc_constant(), 0.5894898, 1e-7);
}

TEST(Quadrature, AdaptiveSimpsonPolynomialIsExact) {
  const double v = adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12);
  EXPECT_NEAR(v, 4.0, 1e-14);
}

TEST(Summation, Examples) {
  EXPECT_EQ(compensated_sum(std::span<const Complex>{}), Complex(0.0));
  const std::vector<Complex> cancel{{1, 0}, {-1, 0}};
  EXPECT_EQ(compensated_sum(cancel), Complex(0.0));
  const std::vector<Complex> hard{{1e16, 0}, {1.0, 0}, {-1e16, 0}};
  EXPECT_EQ(compensated_sum(hard), Complex(1.0, 0.0));
}

TEST(Summation, BitIdenticalAcrossWorkers) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::vector<Complex> v(100'003);
  for (auto& x : v) x = Complex(u(gen), u(gen) * 1e-7);
  const Complex one = compensated_sum(v, 1);
  for (unsigned w : {2u, 3u, 8u}) {
    const Complex other = compensated_sum(v, w);
    EXPECT_EQ(one.real(), other.real());
    EXPECT_EQ(one.imag(), other.imag());
  }
}

TEST(Rng, PhiloxKnownAnswers) {
  using A4 = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                       {0xffffffff, 0xffffffff}),
            (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Rng, DegenerateIntervalAndErrors) {
  RngStream s{1, 2, 3};
  EXPECT_EQ(rng_uniform(s, 3.0, 3.0), 3.0);
  EXPECT_THROW(rng_uniform(s, 1.0, 0.0), DomainError);
}

TEST(Rng, DeterministicForFixedCounter) {
  RngStream a{42, 7, 100};
  RngStream b{42, 7, 100};
  EXPECT_EQ(a.uniform(0, 1), b.uniform(0, 1));
  EXPECT_EQ(a, b);
}

TEST(Rng, MeanAndUniformity) {
  RngStream s{2024, 0, 0};
  std::vector<double> draws(100'000);
  for (auto& d : draws) d = s.uniform(0.0, 1.0);
  double mean = 0.0;
  for (double d : draws) mean += d;
  mean /= double(draws.size());
  EXPECT_NEAR(mean, 0.5, 0.005);
  for (double d : draws) {
    ASSERT_GE(d, 0.0);
    ASSERT_LT(d, 1.0);
  }
  const std::span<const double> first(draws.data(), 10'000);
  EXPECT_LE(ks_distance_uniform(first, 0.0, 1.0), 0.02);
}

TEST(Rng, DistinctStreamsUncorrelated) {
  RngStream a{5, 0, 0};
  RngStream b{5, 1, 0};
  constexpr int n = 50'000;
  double sab = 0.0;
  for (int i = 0; i < n; ++i) sab += (a.uniform(0, 1) - 0.5) * (b.uniform(0, 1) - 0.5);
  // Correlation coefficient within ~5 sigma of zero.
  EXPECT_LT(std::abs(sab / n * 12.0), 5.0 / std::sqrt(double(n)));
}

TEST(Ks, DegenerateSamples) {
  const std::vector<double> same(1000, 0.25);
  EXPECT_GE(ks_distance_uniform(same, 0.0, 1.0), 0.5);
}

}  // namespace
}  // namespace bornphase

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
#include <span>
#include <string>
#include <vector>

#include "bornphase/numeric/matrix.hpp"

namespace bornphase {

inline constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Radix-2 iterative FFT of a fixed power-of-two length.
///
/// Unitary convention: forward X_k = N^{-1/2} sum_j x_j exp(-2 pi i jk/N),
/// inverse with the opposite sign and the same N^{-1/2}. Twiddles and the
/// bit-reversal permutation are precomputed; the butterfly order is fixed,
/// so results are bit-reproducible for a given length.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  void forward(std::span<Complex> data) const;
  void inverse(std::span<Complex> data) const;

 private:
  void transform(std::span<Complex> data, bool inverse) const;

  std::size_t n_;
  std::vector<std::size_t> bit_reverse_;
  std::vector<Complex> twiddles_;  // exp(-2 pi i k / N), k < N/2
  double scale_;
};

std::vector<Complex> fft_forward(std::span<const Complex> data);
std::vector<Complex> fft_inverse(std::span<const Complex> data);

/// O(N^2) transform with the same convention; kept for benchmarking.
std::vector<Complex> naive_dft(std::span<const Complex> data, bool inverse = false);

struct FftBenchRow {
  std::size_t size = 0;
  double fft_ns = 0.0;    // ns per forward transform
  double naive_ns = 0.0;  // ns per naive transform
};

std::vector<FftBenchRow> benchmark_fft(std::span<const std::size_t> sizes,
                                       std::size_t min_repetitions = 8);
std::string bench_csv(std::span<const FftBenchRow> rows);

}  // namespace bornphase

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

#include "bornphase/lattice/fft.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "bornphase/errors.hpp"

namespace bornphase {

FftPlan::FftPlan(std::size_t n)
    : n_(n), bit_reverse_(n), twiddles_(n / 2), scale_(1.0 / std::sqrt(double(n))) {
  if (!is_power_of_two(n)) {
    throw SizeError("FFT length " + std::to_string(n) + " is not a power of two");
  }
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
  for (std::size_t k = 0; k < n / 2; ++k) {
    twiddles_[k] = std::polar(1.0, -2.0 * std::numbers::pi * double(k) / double(n));
  }
}

void FftPlan::forward(std::span<Complex> data) const { transform(data, false); }
void FftPlan::inverse(std::span<Complex> data) const { transform(data, true); }

void FftPlan::transform(std::span<Complex> data, bool inverse) const {
  if (data.size() != n_) {
    throw SizeError("FFT plan of length " + std::to_string(n_) + " applied to " +
                    std::to_string(data.size()) + " values");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < bit_reverse_[i]) std::swap(data[i], data[bit_reverse_[i]]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        Complex w = twiddles_[j * stride];
        if (inverse) w = std::conj(w);
        const Complex u = data[start + j];
        const Complex v = data[start + j + half] * w;
        data[start + j] = u + v;
        data[start + j + half] = u - v;
      }
    }
  }
  for (auto& z : data) z *= scale_;
}

std::vector<Complex> fft_forward(std::span<const Complex> data) {
  std::vector<Complex> out(data.begin(), data.end());
  FftPlan(out.size()).forward(out);
  return out;
}

std::vector<Complex> fft_inverse(std::span<const Complex> data) {
  std::vector<Complex> out(data.begin(), data.end());
  FftPlan(out.size()).inverse(out);
  return out;
}

std::vector<Complex> naive_dft(std::span<const Complex> data, bool inverse) {
  const std::size_t n = data.size();
  const double sign = inverse ? 1.0 : -1.0;
  const double scale = 1.0 / std::sqrt(double(n));
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      // (j * k) mod n keeps the angle argument small and exact.
      const double angle = sign * 2.0 * std::numbers::pi * double((j * k) % n) / double(n);
      acc += data[j] * std::polar(1.0, angle);
    }
    out[k] = acc * scale;
  }
  return out;
}

std::vector<FftBenchRow> benchmark_fft(std::span<const std::size_t> sizes,
                                       std::size_t min_repetitions) {
  using Clock = std::chrono::steady_clock;
  std::vector<FftBenchRow> rows;
  for (std::size_t n : sizes) {
    const FftPlan plan(n);
    std::vector<Complex> input(n);
    for (std::size_t j = 0; j < n; ++j) input[j] = {std::sin(0.37 * double(j)), std::cos(1.3 * double(j))};

    std::vector<Complex> work = input;
    const auto t0 = Clock::now();
    for (std::size_t r = 0; r < min_repetitions; ++r) {
      work = input;
      plan.forward(work);
    }
    const auto t1 = Clock::now();
    const std::size_t naive_reps = std::max<std::size_t>(1, min_repetitions / 4);
    for (std::size_t r = 0; r < naive_reps; ++r) work = naive_dft(input);
    const auto t2 = Clock::now();

    const auto ns = [](auto d) {
      return double(std::chrono::duration_cast<std::chrono::nanoseconds>(d).count());
    };
    rows.push_back({n, ns(t1 - t0) / double(min_repetitions), ns(t2 - t1) / double(naive_reps)});
  }
  return rows;
}

std::string bench_csv(std::span<const FftBenchRow> rows) {
  std::string out = "size,fft_ns_per_transform,naive_ns_per_transform\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{:.1f},{:.1f}\n", row.size, row.fft_ns, row.naive_ns);
  }
  return out;
}

}  // namespace bornphase

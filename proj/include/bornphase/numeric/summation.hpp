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

#include "bornphase/numeric/matrix.hpp"

namespace bornphase {

/// Leaf width of the fixed summation tree.
inline constexpr std::size_t kSumLeafSize = 1024;

/// Running sum with an exactly tracked rounding error (Neumaier).
struct CompensatedReal {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x);
  void merge(const CompensatedReal& other);
  double value() const { return sum + carry; }
};

/// Compensated sum over a fixed binary tree.
///
/// The index range is cut into leaves of kSumLeafSize consecutive values,
/// each summed left to right, and leaves are merged pairwise by halving the
/// leaf range. The tree depends only on the input length, so any split of
/// the leaves across `workers` threads gives a bit-identical result.
Complex compensated_sum(std::span<const Complex> values, unsigned workers = 1);
double compensated_sum(std::span<const double> values, unsigned workers = 1);

}  // namespace bornphase

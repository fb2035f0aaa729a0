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

#include "bornphase/numeric/summation.hpp"

#include <cmath>
#include <vector>

#include "bornphase/numeric/parallel.hpp"

namespace bornphase {
namespace {

struct CompensatedComplex {
  CompensatedReal re;
  CompensatedReal im;

  void merge(const CompensatedComplex& other) {
    re.merge(other.re);
    im.merge(other.im);
  }
};

template <typename Partial>
Partial reduce_tree(const std::vector<Partial>& leaves, std::size_t lo,
                    std::size_t hi) {
  if (hi - lo == 1) return leaves[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  Partial left = reduce_tree(leaves, lo, mid);
  left.merge(reduce_tree(leaves, mid, hi));
  return left;
}

std::size_t leaf_count(std::size_t n) { return (n + kSumLeafSize - 1) / kSumLeafSize; }

}  // namespace

void CompensatedReal::add(double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    carry += (sum - t) + x;
  } else {
    carry += (x - t) + sum;
  }
  sum = t;
}

void CompensatedReal::merge(const CompensatedReal& other) {
  add(other.sum);
  carry += other.carry;
}

Complex compensated_sum(std::span<const Complex> values, unsigned workers) {
  if (values.empty()) return 0.0;
  const std::size_t n_leaves = leaf_count(values.size());
  std::vector<CompensatedComplex> leaves(n_leaves);
  parallel_for(n_leaves, workers, [&](std::size_t leaf) {
    const std::size_t begin = leaf * kSumLeafSize;
    const std::size_t end = std::min(values.size(), begin + kSumLeafSize);
    for (std::size_t i = begin; i < end; ++i) {
      leaves[leaf].re.add(values[i].real());
      leaves[leaf].im.add(values[i].imag());
    }
  });
  const auto total = reduce_tree(leaves, 0, n_leaves);
  return {total.re.value(), total.im.value()};
}

double compensated_sum(std::span<const double> values, unsigned workers) {
  if (values.empty()) return 0.0;
  const std::size_t n_leaves = leaf_count(values.size());
  std::vector<CompensatedReal> leaves(n_leaves);
  parallel_for(n_leaves, workers, [&](std::size_t leaf) {
    const std::size_t begin = leaf * kSumLeafSize;
    const std::size_t end = std::min(values.size(), begin + kSumLeafSize);
    for (std::size_t i = begin; i < end; ++i) leaves[leaf].add(values[i]);
  });
  return reduce_tree(leaves, 0, n_leaves).value();
}

}  // namespace bornphase

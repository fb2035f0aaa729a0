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

#include "bornphase/numeric/ks.hpp"

#include <algorithm>
#include <vector>

#include "bornphase/errors.hpp"

namespace bornphase {

double ks_distance_uniform(std::span<const double> samples, double lo, double hi) {
  if (samples.empty()) throw DomainError("KS distance of an empty sample");
  if (!(hi > lo)) throw DomainError("KS reference interval must have hi > lo");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double distance = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = std::clamp((sorted[i] - lo) / (hi - lo), 0.0, 1.0);
    distance = std::max(distance, (static_cast<double>(i) + 1.0) / n - cdf);
    distance = std::max(distance, cdf - static_cast<double>(i) / n);
  }
  return distance;
}

}  // namespace bornphase

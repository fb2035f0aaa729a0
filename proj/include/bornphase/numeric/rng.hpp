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

#include <array>
#include <cstdint>

namespace bornphase {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream.
///
/// Every draw is a pure function of (seed, stream_id, counter): the seed is
/// the Philox key, and the 128-bit counter block holds (counter, stream_id).
/// A stream is a value token; copying it forks an identical sequence.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::uint64_t counter = 0;

  /// Raw 64 bits for the current counter; advances the counter.
  std::uint64_t next_u64();

  /// Uniform on [lo, hi); lo == hi returns lo. Throws DomainError if lo > hi.
  double uniform(double lo, double hi);

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

inline double rng_uniform(RngStream& stream, double lo, double hi) {
  return stream.uniform(lo, hi);
}

}  // namespace bornphase

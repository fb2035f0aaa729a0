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

#include <cstdlib>
#include <iostream>
#include <vector>

#include "bornphase/lattice/fft.hpp"

// Usage: fft_bench [reps]   (CSV on stdout)
int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 20;
  const std::vector<std::size_t> sizes{64, 128, 256, 512, 1024, 2048, 4096};
  std::cout << bornphase::bench_csv(bornphase::benchmark_fft(sizes, reps > 0 ? reps : 1));
  return 0;
}

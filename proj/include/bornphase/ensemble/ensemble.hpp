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

#include <cstdint>
#include <span>
#include <vector>

#include "bornphase/born/observable.hpp"
#include "bornphase/ensemble/phase_sample.hpp"
#include "bornphase/quantum/system.hpp"

namespace bornphase {

/// Per-mode weights of the single-shot measurement functional.
///
/// For energy mode l the weight is
///   w_l = sum_{m,k} conj(b_m) a_k b_k <Phi_m|Psi_l> <Psi_l|Phi_k>
/// with b = Phi^dagger c the coefficients in the observable's eigenbasis. One
/// shot is sum_l phase_l w_l; with all phases 1 the sum over l collapses by
/// completeness to sum_m |b_m|^2 a_m.
class ShotKernel {
 public:
  ShotKernel(const SpectralSystem& system, const StateVector& state, const Observable& obs);

  std::span<const Complex> mode_weights() const noexcept { return weights_; }
  std::size_t dim() const noexcept { return weights_.size(); }

  /// Throws StaleSampleError if the sample's mode count differs.
  Complex evaluate(const PhaseSample& sample) const;

  /// sum_l w_l, the value of a shot with every phase equal to 1.
  Complex unit_phase_value() const;

 private:
  std::vector<Complex> weights_;
};

Complex single_shot(const SpectralSystem& system, const StateVector& state,
                    const Observable& obs, const PhaseSample& sample, double t_e);

/// Exact mean of single_shot under the paper_measure sampler: kappa * sum_l w_l.
Complex closed_form_average(const SpectralSystem& system, const StateVector& state,
                            const Observable& obs);

struct EnsembleStats {
  std::size_t count = 0;
  Complex mean{};
  double variance = 0.0;    // E|x - mean|^2 with the (count - 1) denominator
  double std_error = 0.0;   // sqrt(variance / count)
  bool std_error_defined = false;  // false for a single shot (reported as 0)
};

/// Mean and spread of complex samples, reduced in the fixed summation tree.
/// The mean is accumulated on values shifted by the first sample, so a
/// constant sample has mean exactly that value and variance exactly 0.
EnsembleStats summarize(std::span<const Complex> values, unsigned workers = 1);

struct ShotRecord {
  std::uint64_t shot_index = 0;
  Complex value{};
  Sampler sampler = Sampler::paper_measure;
  double t_e = 0.0;
  std::uint64_t seed = 0;
};

struct EnsembleConfig {
  double t_e = 0.0;
  std::size_t n_shots = 1;
  Sampler sampler = Sampler::paper_measure;
  std::uint64_t seed = 0;
  double window = 0.0;  // absolute_time only; 0 selects 1e6 * max period
  bool deterministic_regime_constraint = false;
  unsigned workers = 1;
  bool keep_shots = false;
};

struct EnsembleResult {
  EnsembleStats stats;
  double kappa = 0.0;
  Complex renormalized{};  // mean / kappa
  double born_oracle = 0.0;
  double window = 0.0;     // window actually used (absolute_time)
  // Modes whose elapsed residue was capped by t_e (t_e < tau_n with the
  // deterministic-regime constraint on).
  std::vector<std::size_t> clamped_modes;
  std::vector<ShotRecord> shots;  // filled when keep_shots is set
};

inline constexpr double kDefaultWindowPeriods = 1e6;

/// Runs n_shots independent experiments. Shot s draws from the stream with
/// stream_id s (per mode: s * dim + n), and statistics are reduced in the
/// fixed tree order, so the result is bit-identical for any worker count.
EnsembleResult run_ensemble(const SpectralSystem& system, const StateVector& state,
                            const Observable& obs, const EnsembleConfig& config);

struct VarianceScanRow {
  double t_e_over_tau_min = 0.0;
  double t_e = 0.0;
  double variance = 0.0;
  Complex mean{};
};

/// Single-shot variance versus experiment duration under the paper_measure sampler
/// with the deterministic-regime constraint on. Every t_e reuses the same
/// seed. `t_e_list` must be non-negative and ascending.
std::vector<VarianceScanRow> variance_scan(const SpectralSystem& system,
                                           const StateVector& state,
                                           const Observable& obs,
                                           std::span<const double> t_e_list,
                                           std::size_t n_shots, std::uint64_t seed,
                                           unsigned workers = 1);

inline constexpr std::size_t kMinUniformitySamples = 100;

/// Per-mode KS distance of the start residues against U[-tau_n/2, tau_n/2).
std::vector<double> weyl_uniformity(std::span<const PhaseSample> samples,
                                    const SpectralSystem& system);

}  // namespace bornphase

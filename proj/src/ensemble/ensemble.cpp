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

#include "bornphase/ensemble/ensemble.hpp"

#include <cmath>
#include <string>

#include "bornphase/errors.hpp"
#include "bornphase/numeric/ks.hpp"
#include "bornphase/numeric/parallel.hpp"
#include "bornphase/numeric/quadrature.hpp"
#include "bornphase/numeric/summation.hpp"

namespace bornphase {
namespace {

void require_dims(const SpectralSystem& system, const StateVector& state,
                  const Observable& obs) {
  if (system.dim() != state.dim() || system.dim() != obs.dim()) {
    throw DimensionError("system/state/observable dimensions differ: " +
                         std::to_string(system.dim()) + "/" +
                         std::to_string(state.dim()) + "/" + std::to_string(obs.dim()));
  }
}

// Shots are drawn block by block so each worker fills a disjoint range.
constexpr std::size_t kShotBlock = 4096;

}  // namespace

ShotKernel::ShotKernel(const SpectralSystem& system, const StateVector& state,
                       const Observable& obs) {
  require_dims(system, state, obs);
  const std::size_t d = system.dim();
  const auto& phi = obs.eigenbasis();
  const auto a = obs.eigenvalues();

  // b_m = <Phi_m|Psi>.
  std::vector<Complex> b(d);
  for (std::size_t m = 0; m < d; ++m) {
    Complex acc = 0.0;
    for (std::size_t r = 0; r < d; ++r) acc += std::conj(phi(r, m)) * state[r];
    b[m] = acc;
  }

  // <Phi_m|Psi_l> = conj(Phi(l, m)) and <Psi_l|Phi_k> = Phi(l, k), since the
  // observable is stored in the energy eigenbasis. The double sum factorizes
  // into a sum over m times a sum over k for each l.
  weights_.resize(d);
  for (std::size_t l = 0; l < d; ++l) {
    Complex left = 0.0;
    Complex right = 0.0;
    for (std::size_t m = 0; m < d; ++m) left += std::conj(b[m]) * std::conj(phi(l, m));
    for (std::size_t k = 0; k < d; ++k) right += a[k] * b[k] * phi(l, k);
    weights_[l] = left * right;
  }
}

Complex ShotKernel::evaluate(const PhaseSample& sample) const {
  if (sample.modes.size() != weights_.size()) {
    throw StaleSampleError("phase sample has " + std::to_string(sample.modes.size()) +
                           " modes, system has " + std::to_string(weights_.size()));
  }
  Complex acc = 0.0;
  for (std::size_t l = 0; l < weights_.size(); ++l) acc += sample.modes[l].phase * weights_[l];
  return acc;
}

Complex ShotKernel::unit_phase_value() const {
  Complex acc = 0.0;
  for (const auto& w : weights_) acc += w;
  return acc;
}

Complex single_shot(const SpectralSystem& system, const StateVector& state,
                    const Observable& obs, const PhaseSample& sample, double t_e) {
  if (!(t_e >= 0.0)) throw DomainError("t_e must be >= 0");
  return ShotKernel(system, state, obs).evaluate(sample);
}

Complex closed_form_average(const SpectralSystem& system, const StateVector& state,
                            const Observable& obs) {
  return sinc_constant() * ShotKernel(system, state, obs).unit_phase_value();
}

EnsembleStats summarize(std::span<const Complex> values, unsigned workers) {
  EnsembleStats stats;
  stats.count = values.size();
  if (values.empty()) return stats;
  const Complex origin = values.front();
  const double n = static_cast<double>(values.size());

  std::vector<Complex> shifted(values.size());
  parallel_for(values.size(), workers > 1 ? workers : 1, [&](std::size_t i) {
    shifted[i] = values[i] - origin;
  });
  stats.mean = origin + compensated_sum(shifted, workers) / n;

  if (values.size() == 1) return stats;
  std::vector<double> squares(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) squares[i] = std::norm(values[i] - stats.mean);
  stats.variance = compensated_sum(std::span<const double>(squares), workers) / (n - 1.0);
  stats.std_error = std::sqrt(stats.variance / n);
  stats.std_error_defined = true;
  return stats;
}

EnsembleResult run_ensemble(const SpectralSystem& system, const StateVector& state,
                            const Observable& obs, const EnsembleConfig& config) {
  require_dims(system, state, obs);
  if (config.n_shots < 1) throw DomainError("n_shots must be >= 1");
  if (!(config.t_e >= 0.0)) throw DomainError("t_e must be >= 0");

  EnsembleResult result;
  result.kappa = sinc_constant();
  result.born_oracle = born_expectation(state, obs);
  result.window = config.window > 0.0 ? config.window
                                      : kDefaultWindowPeriods * system.max_period();
  if (config.sampler == Sampler::paper_measure && config.deterministic_regime_constraint) {
    for (std::size_t n = 0; n < system.dim(); ++n) {
      if (config.t_e < system.period(n)) result.clamped_modes.push_back(n);
    }
  }

  const ShotKernel kernel(system, state, obs);
  std::vector<Complex> values(config.n_shots);
  const std::size_t n_blocks = (config.n_shots + kShotBlock - 1) / kShotBlock;
  parallel_for(n_blocks, config.workers, [&](std::size_t block) {
    const std::size_t begin = block * kShotBlock;
    const std::size_t end = std::min(config.n_shots, begin + kShotBlock);
    for (std::size_t s = begin; s < end; ++s) {
      const RngStream shot{config.seed, s, 0};
      const PhaseSample sample =
          config.sampler == Sampler::paper_measure
              ? sample_paper_measure(shot, system, config.t_e,
                                     config.deterministic_regime_constraint)
              : sample_absolute_time(shot, system, config.t_e, result.window);
      values[s] = kernel.evaluate(sample);
    }
  });

  result.stats = summarize(values, config.workers);
  result.renormalized = result.stats.mean / result.kappa;
  if (config.keep_shots) {
    result.shots.reserve(values.size());
    for (std::size_t s = 0; s < values.size(); ++s) {
      result.shots.push_back({s, values[s], config.sampler, config.t_e, config.seed});
    }
  }
  return result;
}

std::vector<VarianceScanRow> variance_scan(const SpectralSystem& system,
                                           const StateVector& state,
                                           const Observable& obs,
                                           std::span<const double> t_e_list,
                                           std::size_t n_shots, std::uint64_t seed,
                                           unsigned workers) {
  for (std::size_t i = 0; i < t_e_list.size(); ++i) {
    if (!(t_e_list[i] >= 0.0)) throw DomainError("variance_scan: t_e must be >= 0");
    if (i > 0 && !(t_e_list[i] > t_e_list[i - 1])) {
      throw DomainError("variance_scan: t_e list must be strictly ascending");
    }
  }
  std::vector<VarianceScanRow> rows;
  rows.reserve(t_e_list.size());
  for (double t_e : t_e_list) {
    EnsembleConfig config;
    config.t_e = t_e;
    config.n_shots = n_shots;
    config.sampler = Sampler::paper_measure;
    config.seed = seed;
    config.deterministic_regime_constraint = true;
    config.workers = workers;
    const auto result = run_ensemble(system, state, obs, config);
    rows.push_back({t_e / system.min_period(), t_e, result.stats.variance,
                    result.stats.mean});
  }
  return rows;
}

std::vector<double> weyl_uniformity(std::span<const PhaseSample> samples,
                                    const SpectralSystem& system) {
  if (samples.size() < kMinUniformitySamples) {
    throw DomainError("weyl_uniformity needs at least " +
                      std::to_string(kMinUniformitySamples) + " samples, got " +
                      std::to_string(samples.size()));
  }
  const std::size_t dim = system.dim();
  std::vector<double> distances(dim);
  std::vector<double> residues(samples.size());
  for (std::size_t n = 0; n < dim; ++n) {
    for (std::size_t s = 0; s < samples.size(); ++s) {
      if (samples[s].modes.size() != dim) {
        throw StaleSampleError("sample " + std::to_string(s) + " has wrong mode count");
      }
      residues[s] = samples[s].modes[n].initial_residue;
    }
    const double tau = system.period(n);
    distances[n] = ks_distance_uniform(residues, -0.5 * tau, 0.5 * tau);
  }
  return distances;
}

}  // namespace bornphase

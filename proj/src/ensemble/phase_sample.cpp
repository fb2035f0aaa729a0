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

#include "bornphase/ensemble/phase_sample.hpp"

#include <cmath>
#include <string>

#include "bornphase/errors.hpp"

namespace bornphase {
namespace {

Complex phase_of(double elapsed, double energy) {
  return std::polar(1.0, -elapsed * energy / kHbar);
}

}  // namespace

std::string_view to_string(Sampler sampler) {
  switch (sampler) {
    case Sampler::paper_measure:
      return "paper_measure";
    case Sampler::absolute_time:
      return "absolute_time";
  }
  return "unknown";
}

std::optional<Sampler> parse_sampler(std::string_view text) {
  if (text == "paper_measure") return Sampler::paper_measure;
  if (text == "absolute_time") return Sampler::absolute_time;
  return std::nullopt;
}

Residue residue_decompose(double t, double period) {
  if (!(period > 0.0)) throw DomainError("residue_decompose: period must be > 0");
  if (!std::isfinite(t)) throw DomainError("residue_decompose: t must be finite");
  double q = std::floor(t / period + 0.5);
  double r = std::fma(-q, period, t);
  if (r >= 0.5 * period) {
    q += 1.0;
    r = std::fma(-q, period, t);
  } else if (r < -0.5 * period) {
    q -= 1.0;
    r = std::fma(-q, period, t);
  }
  return {static_cast<std::int64_t>(q), r};
}

RngStream mode_stream(const RngStream& shot, std::size_t mode, std::size_t dim) {
  return RngStream{shot.seed, shot.stream_id * dim + mode, 0};
}

PhaseSample sample_paper_measure(const RngStream& shot, const SpectralSystem& system,
                                 double t_e, bool deterministic_regime_constraint) {
  if (!(t_e >= 0.0)) throw DomainError("t_e must be >= 0");
  const std::size_t dim = system.dim();
  PhaseSample sample{Sampler::paper_measure, std::vector<ModePhase>(dim)};
  for (std::size_t n = 0; n < dim; ++n) {
    const std::size_t rep = system.group_representative(n);
    if (rep != n) {
      sample.modes[n] = sample.modes[rep];
      continue;
    }
    const double tau = system.period(n);
    RngStream stream = mode_stream(shot, n, dim);
    const double initial = stream.uniform(-0.5 * tau, 0.5 * tau);
    const double u = stream.uniform(0.0, 1.0);
    double elapsed = u * initial;
    if (deterministic_regime_constraint && t_e < tau) {
      const double reach = std::min(std::abs(initial), t_e);
      elapsed = std::copysign(u * reach, initial);
      if (initial == 0.0) elapsed = 0.0;
    }
    sample.modes[n] = {initial, elapsed, phase_of(elapsed, system.energy(n))};
  }
  return sample;
}

PhaseSample absolute_time_phases(const SpectralSystem& system, double t_i, double t_e) {
  if (!(t_e >= 0.0)) throw DomainError("t_e must be >= 0");
  const std::size_t dim = system.dim();
  PhaseSample sample{Sampler::absolute_time, std::vector<ModePhase>(dim)};
  const double t_f = t_i + t_e;
  for (std::size_t n = 0; n < dim; ++n) {
    const std::size_t rep = system.group_representative(n);
    if (rep != n) {
      sample.modes[n] = sample.modes[rep];
      continue;
    }
    const double tau = system.period(n);
    double elapsed = std::fmod(t_f, tau);
    if (elapsed < 0.0) elapsed += tau;
    if (elapsed >= tau) elapsed = 0.0;
    sample.modes[n] = {residue_decompose(t_i, tau).remainder, elapsed,
                       phase_of(elapsed, system.energy(n))};
  }
  return sample;
}

PhaseSample sample_absolute_time(const RngStream& shot, const SpectralSystem& system,
                                 double t_e, double window) {
  if (!(window >= kMinWindowPeriods * system.max_period())) {
    throw DomainError("absolute-time window " + std::to_string(window) +
                      " is below 1e3 * max period (" +
                      std::to_string(kMinWindowPeriods * system.max_period()) +
                      "); residues would not equidistribute reliably");
  }
  RngStream stream = mode_stream(shot, 0, system.dim());
  return absolute_time_phases(system, stream.uniform(0.0, window), t_e);
}

}  // namespace bornphase

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
#include <optional>
#include <string_view>
#include <vector>

#include "bornphase/numeric/matrix.hpp"
#include "bornphase/numeric/rng.hpp"
#include "bornphase/quantum/system.hpp"

namespace bornphase {

enum class Sampler {
  paper_measure,  // independent per-mode residues, outer/inner uniform measure
  absolute_time,  // one absolute start time shared by all modes
};

std::string_view to_string(Sampler sampler);
std::optional<Sampler> parse_sampler(std::string_view text);

struct Residue {
  std::int64_t quotient = 0;
  double remainder = 0.0;  // in [-period/2, period/2)
};

/// Writes t = quotient * period + remainder with integer quotient and the
/// remainder in the symmetric window [-period/2, period/2).
Residue residue_decompose(double t, double period);

/// Per-mode timing residues of one experiment.
struct ModePhase {
  double initial_residue = 0.0;  // start time modulo the period, symmetric window
  double elapsed_residue = 0.0;  // residue carried into the phase
  Complex phase{1.0, 0.0};       // exp(-i elapsed_residue E_n)

  /// Part of the period left after the start residue (period - initial).
  double complementary_residue(double period) const { return period - initial_residue; }
};

struct PhaseSample {
  Sampler sampler = Sampler::paper_measure;
  std::vector<ModePhase> modes;
};

/// Random stream for one mode of one shot.
///
/// `shot` carries the seed and the shot index (in stream_id); the mode stream
/// id is shot_index * dim + mode, so shots can be drawn in any order.
RngStream mode_stream(const RngStream& shot, std::size_t mode, std::size_t dim);

/// Draws the residues of the outer/inner uniform measure.
///
/// Per degeneracy group: initial ~ U[-tau/2, tau/2), elapsed = u * initial
/// with u ~ U[0, 1), i.e. uniform on the signed interval between 0 and the
/// initial residue. With `deterministic_regime_constraint` and t_e < tau the
/// elapsed residue is drawn from [0, min(|initial|, t_e)) with the sign of the
/// initial residue instead. The same two uniforms are used either way, so
/// runs that differ only in t_e are coupled.
PhaseSample sample_paper_measure(const RngStream& shot, const SpectralSystem& system,
                                 double t_e,
                                 bool deterministic_regime_constraint = false);

/// Draws one start time t_i ~ U[0, window) and reduces it per mode.
/// Requires window >= 1e3 * max period.
PhaseSample sample_absolute_time(const RngStream& shot, const SpectralSystem& system,
                                 double t_e, double window);

/// Residues for a known start time: initial = residue of t_i, elapsed =
/// (t_i + t_e) mod tau in [0, tau), so the phase is exp(-i t_f E_n).
PhaseSample absolute_time_phases(const SpectralSystem& system, double t_i, double t_e);

inline constexpr double kMinWindowPeriods = 1e3;

}  // namespace bornphase

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

#include <functional>

namespace bornphase {

/// sin(t)/t with the removable singularity filled in (value 1 at t = 0).
double sinc(double t);

/// Adaptive Simpson quadrature with Richardson correction.
/// Stops refining a panel once |S_left + S_right - S_whole| <= 15 tol_panel.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 50);

/// Integral of sin(t)/t over [0, upper], upper in [0, 10 pi], tol >= 1e-14.
double quadrature_sinc(double upper, double tol);

/// The sinc constant (1/pi) * integral_0^pi sin(t)/t dt = Si(pi)/pi.
///
/// This is the per-mode expectation of a phase drawn from the outer/inner
/// uniform residue measure, so ensemble means are divided by it to recover
/// Born expectations. Computed once and cached.
double sinc_constant();

}  // namespace bornphase

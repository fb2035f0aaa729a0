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

#include "bornphase/numeric/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "bornphase/errors.hpp"

namespace bornphase {
namespace {

struct Panel {
  double a, b;
  double fa, fm, fb;
  double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol,
              int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return refine(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         refine(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return refine(f, {a, b, fa, fm, fb, simpson(a, b, fa, fm, fb)}, tol, max_depth);
}

double quadrature_sinc(double upper, double tol) {
  if (!(upper >= 0.0)) throw DomainError("quadrature_sinc: upper limit must be >= 0");
  if (upper > 10.0 * std::numbers::pi) {
    throw DomainError("quadrature_sinc: upper limit must be <= 10 pi");
  }
  if (!(tol >= 1e-14)) throw DomainError("quadrature_sinc: tol must be >= 1e-14");
  return adaptive_simpson(sinc, 0.0, upper, tol);
}

double sinc_constant() {
  static const double kappa =
      quadrature_sinc(std::numbers::pi, 1e-14) / std::numbers::pi;
  return kappa;
}

}  // namespace bornphase

/*
 * Copyright 2026 The TwinForge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "twinforge/vehicle/tire.hpp"

#include <algorithm>
#include <cmath>

#include "twinforge/common/error.hpp"

namespace twinforge {

Cubic FitHermite(double s0, double f0, double m0, double s1, double f1,
                 double m1) {
  // Work in u = s - s0 on [0, h], then shift the polynomial back to s.
  const double h = s1 - s0;
  const double delta = (f1 - f0) / h;
  const double c2 = (3.0 * delta - 2.0 * m0 - m1) / h;
  const double c3 = (m0 + m1 - 2.0 * delta) / (h * h);
  // p(u) = f0 + m0 u + c2 u^2 + c3 u^3 with u = s - s0.
  Cubic out;
  out.a = c3;
  out.b = c2 - 3.0 * c3 * s0;
  out.c = m0 - 2.0 * c2 * s0 + 3.0 * c3 * s0 * s0;
  out.d = f0 - m0 * s0 + c2 * s0 * s0 - c3 * s0 * s0 * s0;
  return out;
}

TireSpline::TireSpline(const TireKnots& knots) : knots_(knots) {
  if (!(knots.zero_slip >= 0.0 && knots.zero_slip < knots.extremum_slip &&
        knots.extremum_slip < knots.asymptote_slip)) {
    throw Error(ErrorCode::kInvalidArgument,
                "tire knots must satisfy 0 <= S_0 < S_e < S_a");
  }
  segments_[0] = FitHermite(knots.zero_slip, knots.zero_force, knots.stiffness,
                            knots.extremum_slip, knots.extremum_force, 0.0);
  segments_[1] =
      FitHermite(knots.extremum_slip, knots.extremum_force, 0.0,
                 knots.asymptote_slip, knots.asymptote_force, 0.0);
}

double TireSpline::operator()(double slip) const {
  const double s = std::abs(slip);
  double f;
  if (s >= knots_.asymptote_slip) {
    f = knots_.asymptote_force;
  } else if (s >= knots_.extremum_slip) {
    f = segments_[1](s);
  } else {
    f = segments_[0](s);
  }
  return slip < 0.0 ? -f : f;
}

double TireSpline::derivative(double slip) const {
  const double s = std::abs(slip);
  if (s >= knots_.asymptote_slip) return 0.0;
  if (s >= knots_.extremum_slip) return segments_[1].derivative(s);
  return segments_[0].derivative(s);
}

Slip compute_slip(double vx, double vy, double omega, double radius,
                  double guard) {
  const double denom = std::max(std::abs(vx), guard);
  return {(radius * omega - vx) / denom, vy / denom};
}

double tire_force(double slip, const TireSpline& spline, double load,
                  double nominal_load) {
  if (!(nominal_load > 0.0)) return 0.0;
  return spline(slip) * (load / nominal_load);
}

}  // namespace twinforge

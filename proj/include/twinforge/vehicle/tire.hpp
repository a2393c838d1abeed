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

#ifndef TWINFORGE_VEHICLE_TIRE_HPP_
#define TWINFORGE_VEHICLE_TIRE_HPP_

#include <array>

namespace twinforge {

// f(S) = a S^3 + b S^2 + c S + d.
struct Cubic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double operator()(double s) const { return ((a * s + b) * s + c) * s + d; }
  double derivative(double s) const { return (3.0 * a * s + 2.0 * b) * s + c; }
};

struct TireKnots {
  double zero_slip = 0.0;        // S_0
  double zero_force = 0.0;       // F_0
  double extremum_slip = 0.2;    // S_e
  double extremum_force = 1.0;   // F_e
  double asymptote_slip = 0.8;   // S_a
  double asymptote_force = 0.75;  // F_a
  double stiffness = 10.0;       // slope at S_0 (C_alpha for the lateral curve)
};

// Two-piece cubic friction curve through the zero, extremum and asymptote
// knots. Segment 0 matches value and slope at S_0 and value with zero slope
// at S_e; segment 1 matches value with zero slope at S_e and S_a. Negative slip
// uses the odd extension and slip beyond S_a saturates at F_a.
class TireSpline {
 public:
  TireSpline() : TireSpline(TireKnots{}) {}
  explicit TireSpline(const TireKnots& knots);

  const TireKnots& knots() const { return knots_; }
  const std::array<Cubic, 2>& segments() const { return segments_; }

  double operator()(double slip) const;
  double derivative(double slip) const;

 private:
  TireKnots knots_;
  std::array<Cubic, 2> segments_;
};

// Cubic through (s0, f0) with slope m0 and (s1, f1) with slope m1, expanded to
// monomial coefficients in absolute slip.
Cubic FitHermite(double s0, double f0, double m0, double s1, double f1,
                 double m1);

struct Slip {
  double longitudinal = 0.0;  // S_x
  double lateral = 0.0;       // S_y = tan(alpha)
};

inline constexpr double kSlipSpeedGuard = 0.1;  // m/s

// S_x = (r w - v_x) / max(|v_x|, eps), S_y = v_y / max(|v_x|, eps).
Slip compute_slip(double vx, double vy, double omega, double radius,
                  double guard = kSlipSpeedGuard);

// F(S) scaled by load / nominal_load.
double tire_force(double slip, const TireSpline& spline, double load,
                  double nominal_load);

}  // namespace twinforge

#endif  // TWINFORGE_VEHICLE_TIRE_HPP_

// Copyright 2026 The weakcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Interferometric CZ between two dual-rail photons with a weak central beam
// splitter, a bypass mode C coupled to A1 before (BS_X) and after (BS_Y) the
// central coupling, and attenuators on A0 (t_A) and B0 (t_B). Post-selecting
// one photon per qubit gives W|jk> = w_jk |jk>.
//
// Sign convention: t_X, t_Y, r_X >= 0; r_Y carries the sign of 3R - 2, so
// for R < 2/3 the second plate is rotated the other way.

#pragma once

#include <array>
#include <cmath>
#include <string>

#include "weakcz/errors.hpp"
#include "weakcz/qmath.hpp"

namespace weakcz::optical {

/// The reflectance that makes the bare scheme a CZ.
inline constexpr double kStandardCzReflectance = 2.0 / 3.0;

struct Coupling {
  double t;
  double r;
};

/// Half-wave plate at `angle_rad` seen as a coupling: t = cos 2phi, r = sin 2phi.
inline Coupling wave_plate_coupling(double angle_rad) { return {std::cos(2.0 * angle_rad), std::sin(2.0 * angle_rad)}; }

/// Inverse of wave_plate_coupling, angle in (-pi/4, pi/4] for t >= 0.
inline double wave_plate_angle(double t, double r) { return 0.5 * std::atan2(r, t); }

/// t = sqrt(1-R), r = sqrt(R).
inline Coupling central_coupling(double reflectance) {
  if (!(reflectance >= 0.0 && reflectance <= 1.0)) throw DomainError("reflectance must lie in [0, 1]");
  return {std::sqrt(1.0 - reflectance), std::sqrt(reflectance)};
}

/// Heisenberg-picture mode transformation a_out = t a - r b, b_out = t b + r a.
inline ComplexMatrix beam_splitter_heisenberg(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("beam splitter transmittance must lie in [0, 1]");
  const double r = std::sqrt(1.0 - t * t);
  return {{t, -r}, {r, t}};
}

struct OpticalSchemeParams {
  double R = kStandardCzReflectance;
  double t_x = 1.0;
  double r_x = 0.0;
  double t_y = 1.0;
  double r_y = 0.0;
  double t_a = 1.0;
  double t_b = 1.0;

  Coupling central() const { return central_coupling(R); }

  void validate(double tol = kTolerance) const {
    central_coupling(R);
    if (std::abs(t_x * t_x + r_x * r_x - 1.0) > tol) throw DomainError("BS_X violates t_X^2 + r_X^2 = 1");
    if (std::abs(t_y * t_y + r_y * r_y - 1.0) > tol) throw DomainError("BS_Y violates t_Y^2 + r_Y^2 = 1");
    if (!(t_a >= -tol && t_a <= 1.0 + tol)) throw DomainError("t_A must lie in [0, 1]");
    if (!(t_b >= -tol && t_b <= 1.0 + tol)) throw DomainError("t_B must lie in [0, 1]");
  }
};

/// Conditional amplitudes for |00>, |01>, |10>, |11>.
using Amplitudes = std::array<double, 4>;

struct NoBypassAmplitudes {
  Amplitudes bare;      ///< central coupling alone: (1, t, t, t^2 - r^2)
  Amplitudes filtered;  ///< with A0/B0 filters of the same R: (T, T, T, 1 - 2R)
};

inline NoBypassAmplitudes coincidence_amplitudes_no_bypass(double reflectance) {
  const auto [t, r] = central_coupling(reflectance);
  const double T = t * t;
  return {{1.0, t, t, t * t - r * r}, {T, T, T, 1.0 - 2.0 * reflectance}};
}

inline Amplitudes bypass_amplitudes(const OpticalSchemeParams& p) {
  p.validate();
  const double t = p.central().t;
  return {
      p.t_a * p.t_b,
      p.t_a * t,
      (t * p.t_x * p.t_y + p.r_x * p.r_y) * p.t_b,
      (2.0 * t * t - 1.0) * p.t_x * p.t_y + t * p.r_x * p.r_y,
  };
}

struct CzBypassSolution {
  double t_y;
  double r_y;
  double t_a;
  double t_b;
};

/// Bypass and filter settings making w_00 = w_01 = w_10 = -w_11 for a given
/// central reflectance and first bypass coupling t_X.
inline CzBypassSolution solve_cz_conditions(double reflectance, double t_x, double tol = kTolerance) {
  if (!(reflectance > 0.0 && reflectance < 1.0)) throw DomainError("solve_cz_conditions: R must lie in (0, 1)");
  if (!(t_x > tol && t_x <= 1.0)) {
    throw InfeasibleError("solve_cz_conditions: t_X = " + std::to_string(t_x) + " outside the feasible range (0, 1)");
  }
  const double t = std::sqrt(1.0 - reflectance);
  const double r_x = std::sqrt(std::max(0.0, 1.0 - t_x * t_x));
  const double mismatch = (3.0 * reflectance - 2.0) / (2.0 * t);  // r_X r_Y / (t_X t_Y)

  if (std::abs(3.0 * reflectance - 2.0) <= tol) {
    // Any t_Y works at R = 2/3; t_Y = 1 maximises the success probability.
    return {1.0, 0.0, t * t_x, t};
  }
  if (r_x <= tol) {
    throw InfeasibleError("solve_cz_conditions: t_X = 1 (no bypass) only works at R = 2/3; feasible t_X range is (0, 1)");
  }
  const double ratio = mismatch * t_x / r_x;  // r_Y / t_Y
  const double t_y = 1.0 / std::sqrt(1.0 + ratio * ratio);
  const double r_y = ratio * t_y;
  const double t_a = t * t_x * t_y + r_x * r_y;
  if (t_a > 1.0 + tol || t_a < -tol) {
    throw InfeasibleError("solve_cz_conditions: required t_A = " + std::to_string(t_a) + " is not an attenuation");
  }
  return {t_y, r_y, t_a, t};
}

/// Full parameter set for the CZ solution at (R, t_X).
inline OpticalSchemeParams cz_scheme(double reflectance, double t_x) {
  const auto sol = solve_cz_conditions(reflectance, t_x);
  return {reflectance, t_x, std::sqrt(std::max(0.0, 1.0 - t_x * t_x)), sol.t_y, sol.r_y, sol.t_a, sol.t_b};
}

struct OptimalBypass {
  double t_x;
  double t_y;
  double p_success;
};

/// P_S = R^2 t_X^2 t_Y^2 / 4, maximal at t_X^2 = t_Y^2 = 2t / (2t + |3R - 2|).
inline OptimalBypass optimal_bypass(double reflectance) {
  if (!(reflectance > 0.0 && reflectance < 1.0)) throw DomainError("optimal_bypass: R must lie in (0, 1)");
  const double t = std::sqrt(1.0 - reflectance);
  const double tx2 = 2.0 * t / (2.0 * t + std::abs(3.0 * reflectance - 2.0));
  const double tx = std::sqrt(tx2);
  return {tx, tx, reflectance * reflectance * tx2 * tx2 / 4.0};
}

}  // namespace weakcz::optical

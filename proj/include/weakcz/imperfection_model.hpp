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

// Analytic model of the polarisation-encoded experimental gate.
//
// The central partially polarising beam splitter reflects R for vertical and
// R_H for horizontal light; the idler-side filter beam splitter is assumed
// identical to it. Imperfect two-photon interference (visibility V) is a
// binary mixture: with weight q = 2V/(1+V) the photons are indistinguishable,
// otherwise they are distinguishable and are either both transmitted or both
// reflected at the central coupling:
//
//   chi = q chi_I + (1 - q) chi_R + (1 - q) chi_T.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weakcz/errors.hpp"
#include "weakcz/metrics.hpp"
#include "weakcz/optical_gate.hpp"
#include "weakcz/process_matrix.hpp"
#include "weakcz/qmath.hpp"

namespace weakcz::model {

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Reflectance the scheme is designed for.
inline constexpr double kNominalReflectance = 1.0 / 3.0;

struct SetupParams {
  double R = kNominalReflectance;  ///< vertical-polarisation reflectance
  double R_H = 0.0;                ///< parasitic horizontal reflectance
  double visibility = 1.0;
  double phi_x_deg = 0.0;
  double phi_y_deg = 0.0;
  double phi_a_deg = 0.0;

  /// Measured component values of the demonstration setup.
  static SetupParams fixture() { return {0.313, 0.019, 0.94, 0.0, 0.0, 0.0}; }
  static SetupParams ideal() { return {kNominalReflectance, 0.0, 1.0, 0.0, 0.0, 0.0}; }

  void validate() const {
    if (!(R >= 0.0 && R <= 1.0)) throw DomainError("R must lie in [0, 1]");
    if (!(R_H >= 0.0 && R_H <= 1.0)) throw DomainError("R_H must lie in [0, 1]");
    if (!(visibility >= 0.0 && visibility <= 1.0)) throw DomainError("visibility must lie in [0, 1]");
  }

  /// Indistinguishable fraction.
  double q() const { return 2.0 * visibility / (1.0 + visibility); }
};

/// Every amplitude the coefficient formulas use, derived from SetupParams.
struct Amplitudes {
  double t, r, t_h, r_h;
  double t_x, r_x, t_y, r_y, t_a;

  static Amplitudes of(const SetupParams& p) {
    p.validate();
    const auto x = optical::wave_plate_coupling(deg_to_rad(p.phi_x_deg));
    const auto y = optical::wave_plate_coupling(deg_to_rad(p.phi_y_deg));
    const auto a = optical::wave_plate_coupling(deg_to_rad(p.phi_a_deg));
    return {std::sqrt(1.0 - p.R), std::sqrt(p.R), std::sqrt(1.0 - p.R_H), std::sqrt(p.R_H), x.t, x.r, y.t, y.r, a.t};
  }
};

struct IndistinguishableCoefficients {
  double beta_00, beta_01, beta_10, beta_11;
  double gamma_11;  ///< |10> -> |11>
  double gamma_10;  ///< |11> -> |10>
};

struct TransmittedCoefficients {
  double beta_00, beta_01, beta_10, beta_11;
};

struct ReflectedCoefficients {
  double beta_10, beta_11, gamma_11, gamma_10;
};

inline IndistinguishableCoefficients coefficients_indistinguishable(const SetupParams& p) {
  const auto a = Amplitudes::of(p);
  const double b00 = a.t * a.t_a * a.t_h * a.t_h;
  return {
      b00,
      b00,
      a.t_x * a.t_y * a.t_h * a.t * a.t + a.r_x * a.r_y * (a.t_h * a.t_h - a.r_h * a.r_h) * a.t,
      a.t_x * a.t_y * a.t_h * (2.0 * a.t * a.t - 1.0) + a.r_x * a.r_y * a.t_h * a.t_h * a.t,
      -a.r_h * a.t_x * a.r_y * a.r * a.t_h,
      -a.t * a.r * a.r_x * a.t_y * a.r_h,
  };
}

inline TransmittedCoefficients coefficients_transmitted(const SetupParams& p) {
  const auto a = Amplitudes::of(p);
  const double b00 = a.t_h * a.t_h * a.t * a.t_a;
  const double b10 = a.t_h * a.t * (a.t_x * a.t_y * a.t + a.r_x * a.r_y * a.t_h);
  return {b00, b00, b10, b10};
}

inline ReflectedCoefficients coefficients_reflected(const SetupParams& p) {
  const auto a = Amplitudes::of(p);
  return {
      -a.r_h * a.r_h * a.r_x * a.r_y * a.t,
      -a.r * a.r * a.t_x * a.t_y * a.t_h,
      -a.r_h * a.t_x * a.r_y * a.r * a.t_h,
      -a.r * a.r_x * a.t_y * a.r_h * a.t,
  };
}

namespace detail {

inline std::size_t ket(std::size_t in, std::size_t out) { return choi_index(in, out); }

}  // namespace detail

/// Choi vectors |chi_I>, |chi_T>, |chi_R>.
inline std::vector<Complex> chi_vector_indistinguishable(const SetupParams& p) {
  using detail::ket;
  const auto c = coefficients_indistinguishable(p);
  std::vector<Complex> v(16);
  v[ket(0, 0)] = c.beta_00;
  v[ket(1, 1)] = c.beta_01;
  v[ket(2, 2)] = c.beta_10;
  v[ket(3, 3)] = c.beta_11;
  v[ket(2, 3)] = c.gamma_11;
  v[ket(3, 2)] = c.gamma_10;
  return v;
}

inline std::vector<Complex> chi_vector_transmitted(const SetupParams& p) {
  using detail::ket;
  const auto c = coefficients_transmitted(p);
  std::vector<Complex> v(16);
  v[ket(0, 0)] = c.beta_00;
  v[ket(1, 1)] = c.beta_01;
  v[ket(2, 2)] = c.beta_10;
  v[ket(3, 3)] = c.beta_11;
  return v;
}

/// No output for inputs |00> and |01>.
inline std::vector<Complex> chi_vector_reflected(const SetupParams& p) {
  using detail::ket;
  const auto c = coefficients_reflected(p);
  std::vector<Complex> v(16);
  v[ket(2, 2)] = c.beta_10;
  v[ket(3, 3)] = c.beta_11;
  v[ket(2, 3)] = c.gamma_11;
  v[ket(3, 2)] = c.gamma_10;
  return v;
}

struct ChiComponents {
  ProcessMatrix indistinguishable;
  ProcessMatrix transmitted;
  ProcessMatrix reflected;
};

inline ChiComponents chi_components(const SetupParams& p) {
  return {ProcessMatrix::rank_one(chi_vector_indistinguishable(p)), ProcessMatrix::rank_one(chi_vector_transmitted(p)),
          ProcessMatrix::rank_one(chi_vector_reflected(p))};
}

inline ProcessMatrix process_matrix(const SetupParams& p) {
  const auto parts = chi_components(p);
  const double q = p.q();
  return q * parts.indistinguishable + (1.0 - q) * parts.reflected + (1.0 - q) * parts.transmitted;
}

/// Which reflectance the plate-angle rule solves the CZ conditions for.
enum class AngleRule {
  kNominalR,   ///< design value R = 1/3
  kMeasuredR,  ///< the setup's own R
};

inline std::string to_string(AngleRule rule) { return rule == AngleRule::kNominalR ? "nominal-R" : "measured-R"; }

inline AngleRule angle_rule_from_string(const std::string& s) {
  if (s == "nominal-R") return AngleRule::kNominalR;
  if (s == "measured-R") return AngleRule::kMeasuredR;
  throw DomainError("unknown angle rule '" + s + "' (expected nominal-R or measured-R)");
}

inline double rule_reflectance(const SetupParams& p, AngleRule rule) {
  return rule == AngleRule::kNominalR ? kNominalReflectance : p.R;
}

/// Sets phi_Y and phi_A from phi_X so the ideal scheme at the rule's
/// reflectance satisfies the CZ conditions. R, R_H and V are untouched.
///
/// phi_X = 0 cannot satisfy them unless R = 2/3; it then yields the
/// filter-only setting phi_Y = 0, t_A = t.
inline SetupParams cz_parameter_solution(const SetupParams& p, AngleRule rule = AngleRule::kNominalR) {
  p.validate();
  const double design_r = rule_reflectance(p, rule);
  const auto x = optical::wave_plate_coupling(deg_to_rad(p.phi_x_deg));
  SetupParams out = p;

  if (p.phi_x_deg == 0.0 && std::abs(3.0 * design_r - 2.0) > kTolerance) {
    out.phi_y_deg = 0.0;
    out.phi_a_deg = rad_to_deg(std::acos(std::sqrt(1.0 - design_r)) / 2.0);
    return out;
  }
  if (x.r < 0.0) {
    throw InfeasibleError("phi_X = " + std::to_string(p.phi_x_deg) + " deg is infeasible; feasible range is (0, 45) deg");
  }
  try {
    const auto sol = optical::solve_cz_conditions(design_r, x.t);
    out.phi_y_deg = rad_to_deg(optical::wave_plate_angle(sol.t_y, sol.r_y));
    out.phi_a_deg = rad_to_deg(std::acos(std::clamp(sol.t_a, -1.0, 1.0)) / 2.0);
  } catch (const InfeasibleError& e) {
    throw InfeasibleError("phi_X = " + std::to_string(p.phi_x_deg) + " deg is infeasible (" + e.what() +
                          "); feasible range is (0, 45) deg");
  }
  return out;
}

struct SweepPoint {
  double phi_y_deg;
  double phi_a_deg;
  double f_h;
  double f_chi;
  double p_s;
};

struct SweepRecord {
  double phi_x_deg;
  /// Empty when the CZ conditions cannot be met at this phi_X.
  std::optional<SweepPoint> point;

  bool feasible() const { return point.has_value(); }
};

/// Evaluates one grid point: solve the plate angles, build chi, report
/// F_H, F_chi and the average success probability.
inline SweepRecord sweep_point(const SetupParams& base, double phi_x_deg, AngleRule rule = AngleRule::kNominalR) {
  SetupParams p = base;
  p.phi_x_deg = phi_x_deg;
  const auto x = optical::wave_plate_coupling(deg_to_rad(phi_x_deg));
  const double design_r = rule_reflectance(base, rule);
  const bool standard_cz = std::abs(3.0 * design_r - 2.0) <= kTolerance;
  if (x.r <= kTolerance && !standard_cz) return {phi_x_deg, std::nullopt};

  SetupParams solved;
  try {
    solved = cz_parameter_solution(p, rule);
  } catch (const InfeasibleError&) {
    return {phi_x_deg, std::nullopt};
  }
  const ProcessMatrix chi = process_matrix(solved);
  if (chi.trace() <= 0.0) return {phi_x_deg, std::nullopt};
  const auto bound = metrics::hofmann_bound(chi);
  return {phi_x_deg,
          SweepPoint{solved.phi_y_deg, solved.phi_a_deg, bound.f_h, metrics::process_fidelity(chi),
                     metrics::average_success_probability(chi)}};
}

/// One record per grid angle, in grid order. Infeasible points are flagged,
/// not fatal.
inline std::vector<SweepRecord> sweep_phi_x(const SetupParams& base, std::span<const double> grid_deg,
                                            AngleRule rule = AngleRule::kNominalR) {
  if (grid_deg.empty()) throw DomainError("sweep grid must not be empty");
  base.validate();
  std::vector<SweepRecord> out;
  out.reserve(grid_deg.size());
  for (const double phi : grid_deg) out.push_back(sweep_point(base, phi, rule));
  return out;
}

/// `points` equally spaced angles from start to stop inclusive.
inline std::vector<double> linear_grid(double start, double stop, std::size_t points) {
  if (points == 0) throw DomainError("grid needs at least one point");
  if (points == 1) return {start};
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return g;
}

}  // namespace weakcz::model

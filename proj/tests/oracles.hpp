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

// Test-only reference computations. Nothing here calls the code under test
// for the quantity it is checking.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "weakcz/qmath.hpp"

namespace oracles {

using weakcz::Complex;
using weakcz::ComplexMatrix;

// Reference values for the demonstration parameters R=0.313, R_H=0.019,
// V=0.94 at phi_X = 20 deg, computed with an independent numpy script from
// the printed coefficient formulas.
namespace fixture20 {
inline constexpr double kFChiNominal = 0.8882750757209118;
inline constexpr double kFHNominal = 0.864958155708401;
inline constexpr double kPSNominal = 0.01126195805357113;
inline constexpr double kTANominal = 0.1263087409089827;
inline constexpr double kFChiMeasured = 0.8979303149679584;
inline constexpr double kFHMeasured = 0.8831247623126912;
}  // namespace fixture20

// Measured values quoted for the real device. Reference only.
inline constexpr double kMeasuredProcessFidelity = 0.846;
inline constexpr double kMeasuredSuccessProbability = 0.0115;

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const auto a = random_matrix(n, n, rng);
  return (a + a.adjoint()) * Complex(0.5);
}

/// G G^dagger with G of random rank in [1, 16].
inline ComplexMatrix random_psd(std::size_t n, std::mt19937_64& rng) {
  const std::size_t rank = 1 + rng() % n;
  const auto g = random_matrix(n, rank, rng);
  return g * g.adjoint();
}

/// (A (x) B)[p i + k][q j + l] = A[i][j] B[k][l] by direct loops.
inline ComplexMatrix kron_loops(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Best |eta_A|^2 over real couplings (t, t~) satisfying r r~ = c t t~,
/// found by a dense scan in t, bisection for t~, then golden-section
/// refinement. With the local phase alpha = -phi/2 the filter amplitude is
/// e^{i alpha} t t~ - r r~.
inline double spin_success_grid_search(double phi) {
  const double c = std::abs(std::cos(phi / 2.0));
  const auto t_tilde_for = [c](double t) {
    const double r = std::sqrt(1.0 - t * t);
    // sqrt(1 - s^2) r - c t s decreases in s; bisect for its root.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const double lhs = std::sqrt(1.0 - mid * mid) * r;
      if (lhs > c * t * mid) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  const auto ps = [&](double t) {
    const double tt = t_tilde_for(t);
    const double r = std::sqrt(1.0 - t * t);
    const double rt = std::sqrt(1.0 - tt * tt);
    const Complex eta = std::polar(1.0, -phi / 2.0) * t * tt - r * rt;
    return std::norm(eta);
  };
  constexpr int kGrid = 4000;
  double best_t = 0.5, best = -1.0;
  for (int i = 1; i < kGrid; ++i) {
    const double t = double(i) / kGrid;
    const double v = ps(t);
    if (v > best) best = v, best_t = t;
  }
  double a = std::max(1e-9, best_t - 1.0 / kGrid), b = std::min(1.0, best_t + 1.0 / kGrid);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 200; ++i) {
    const double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    if (ps(x1) < ps(x2)) a = x1; else b = x2;
  }
  return std::max(best, ps(0.5 * (a + b)));
}

/// Best R^2 t_X^2 t_Y^2 / 4 over plate angles phi_X in (0, 45) deg, with t_Y
/// chosen so r_X r_Y / (t_X t_Y) = (3R - 2) / (2t).
struct BypassScan {
  double phi_x_deg;
  double p_success;
};

inline BypassScan bypass_grid_search(double R) {
  const double t = std::sqrt(1.0 - R);
  BypassScan best{0.0, -1.0};
  constexpr int kGrid = 450000;
  for (int i = 1; i < kGrid; ++i) {
    const double deg = 45.0 * i / kGrid;
    const double a = 2.0 * deg * std::numbers::pi / 180.0;
    const double tx = std::cos(a), rx = std::sin(a);
    const double ratio = (3.0 * R - 2.0) / (2.0 * t) * tx / rx;
    const double ty2 = 1.0 / (1.0 + ratio * ratio);
    const double ps = R * R * tx * tx * ty2 / 4.0;
    if (ps > best.p_success) best = {deg, ps};
  }
  return best;
}

}  // namespace oracles

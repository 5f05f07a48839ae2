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

// Cross-module equivalence: the mode-network simulation against the closed
// forms in imperfection_model and optical_gate, over seeded random draws.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "weakcz/errors.hpp"
#include "weakcz/fock_oracle.hpp"
#include "weakcz/imperfection_model.hpp"
#include "weakcz/optical_gate.hpp"
#include "weakcz/process_matrix.hpp"

namespace weakcz::oracle {

/// Negative control: deliberately break one closed-form coefficient.
enum class Fault {
  kNone,
  kFlipGamma11,  ///< sign of gamma_11 in the indistinguishable branch
};

struct CheckResult {
  std::string name;
  double max_abs_diff;
  bool passed;
};

struct DrawResult {
  std::size_t draw;
  model::SetupParams params;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

struct Report {
  std::vector<DrawResult> draws;
  double tolerance;

  bool passed() const {
    return std::all_of(draws.begin(), draws.end(), [](const DrawResult& d) { return d.passed(); });
  }
};

/// R in [0.05, 0.95], R_H in [0, 0.1], V in [0, 1], plate angles in [-45, 45] deg.
template <typename Rng>
model::SetupParams random_setup(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-45.0, 45.0);
  model::SetupParams p;
  p.R = 0.05 + 0.9 * unit(rng);
  p.R_H = 0.1 * unit(rng);
  p.visibility = unit(rng);
  p.phi_x_deg = angle(rng);
  p.phi_y_deg = angle(rng);
  p.phi_a_deg = angle(rng);
  return p;
}

inline ProcessMatrix model_process_matrix(const model::SetupParams& p, Fault fault) {
  if (fault == Fault::kNone) return model::process_matrix(p);
  auto v = model::chi_vector_indistinguishable(p);
  v[choi_index(2, 3)] = -v[choi_index(2, 3)];
  const auto parts = model::chi_components(p);
  const double q = p.q();
  return q * ProcessMatrix::rank_one(v) + (1.0 - q) * parts.reflected + (1.0 - q) * parts.transmitted;
}

/// Diagonal of the ideal network's conditional map against bypass_amplitudes,
/// plus the largest off-diagonal entry.
inline double ideal_network_mismatch(const optical::OpticalSchemeParams& s) {
  const auto gate = fock::ideal_bypass_network(s);
  const auto w = fock::conditional_transformation(gate.network, gate.rails);
  const auto amp = optical::bypass_amplitudes(s);
  double diff = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex expect = i == j ? Complex(amp[i]) : Complex(0.0);
      diff = std::max(diff, std::abs(w(i, j) - expect));
    }
  }
  return diff;
}

/// Closed-form model with R_H = 0 and V = 1 against the ideal scheme with t_B = t.
inline double ideal_limit_mismatch(const model::SetupParams& p) {
  model::SetupParams clean = p;
  clean.R_H = 0.0;
  clean.visibility = 1.0;
  const auto a = model::Amplitudes::of(clean);
  const optical::OpticalSchemeParams s{clean.R, a.t_x, a.r_x, a.t_y, a.r_y, a.t_a, a.t};
  const auto amp = optical::bypass_amplitudes(s);
  const auto c = model::coefficients_indistinguishable(clean);
  const double model_amp[4] = {c.beta_00, c.beta_01, c.beta_10, c.beta_11};
  double diff = std::max(std::abs(c.gamma_10), std::abs(c.gamma_11));
  for (std::size_t i = 0; i < 4; ++i) diff = std::max(diff, std::abs(model_amp[i] - amp[i]));
  return diff;
}

inline DrawResult check_setup(std::size_t draw, const model::SetupParams& p, double tol, Fault fault) {
  DrawResult out{draw, p, {}};
  const auto add = [&](std::string name, double diff) { out.checks.push_back({std::move(name), diff, diff <= tol}); };

  const auto fock_chi = fock::oracle_process_matrix(p);
  const auto parts = model::chi_components(p);
  add("chi_I network vs closed form", max_abs_diff(fock_chi.indistinguishable.matrix(), parts.indistinguishable.matrix()));
  add("chi_T network vs closed form", max_abs_diff(fock_chi.transmitted.matrix(), parts.transmitted.matrix()));
  add("chi_R network vs closed form", max_abs_diff(fock_chi.reflected.matrix(), parts.reflected.matrix()));
  add("chi network vs process_matrix",
      max_abs_diff(fock_chi.mixture.matrix(), model_process_matrix(p, fault).matrix()));

  const auto a = model::Amplitudes::of(p);
  const optical::OpticalSchemeParams s{p.R, a.t_x, a.r_x, a.t_y, a.r_y, std::abs(a.t_a), a.t};
  add("ideal network vs bypass_amplitudes", ideal_network_mismatch(s));
  add("model at R_H=0, V=1 vs bypass_amplitudes", ideal_limit_mismatch(p));
  return out;
}

/// Runs `draws` seeded random parameter sets. `draws` must be positive.
inline Report run(std::size_t draws, std::uint64_t seed, double tol = kTolerance, Fault fault = Fault::kNone) {
  if (draws == 0) throw DomainError("oracle check needs at least one draw");
  std::mt19937_64 rng(seed);
  Report report{{}, tol};
  for (std::size_t i = 0; i < draws; ++i) report.draws.push_back(check_setup(i, random_setup(rng), tol, fault));
  return report;
}

}  // namespace weakcz::oracle

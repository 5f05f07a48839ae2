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

// Figures of merit for a probabilistic two-qubit gate against CZ.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "weakcz/errors.hpp"
#include "weakcz/process_matrix.hpp"
#include "weakcz/qmath.hpp"

namespace weakcz::metrics {

struct ProbeBasis {
  std::string label;
  std::array<PureState, 4> states;

  /// Sum of the four projectors equals I_4 within tol.
  bool is_orthonormal(double tol = kTolerance) const {
    ComplexMatrix sum(4, 4);
    for (const auto& s : states) sum += s.projector();
    return max_abs_diff(sum, ComplexMatrix::identity(4)) <= tol;
  }
};

/// {|0+>, |0->, |1+>, |1->}
inline ProbeBasis z_x_basis() {
  using namespace states;
  return {"ZX",
          {PureState::product(zero(), plus()), PureState::product(zero(), minus()), PureState::product(one(), plus()),
           PureState::product(one(), minus())}};
}

/// {|+0>, |+1>, |-0>, |-1>}
inline ProbeBasis x_z_basis() {
  using namespace states;
  return {"XZ",
          {PureState::product(plus(), zero()), PureState::product(plus(), one()), PureState::product(minus(), zero()),
           PureState::product(minus(), one())}};
}

/// Haar-random single-qubit unitary: Gaussian first column, random second-column phase.
template <typename Rng>
ComplexMatrix random_unitary_2(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const Complex a(g(rng), g(rng)), b(g(rng), g(rng));
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  const Complex u0 = a / n, u1 = b / n;
  const Complex phase = std::polar(1.0, std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng));
  return {{u0, -std::conj(u1) * phase}, {u1, std::conj(u0) * phase}};
}

/// Orthonormal product basis {u|a> (x) v|b>} with random single-qubit u, v.
template <typename Rng>
ProbeBasis random_product_basis(Rng& rng) {
  const ComplexMatrix u = random_unitary_2(rng);
  const ComplexMatrix v = random_unitary_2(rng);
  const auto col = [](const ComplexMatrix& m, std::size_t c) { return PureState({m(0, c), m(1, c)}); };
  return {"random",
          {PureState::product(col(u, 0), col(v, 0)), PureState::product(col(u, 0), col(v, 1)),
           PureState::product(col(u, 1), col(v, 0)), PureState::product(col(u, 1), col(v, 1))}};
}

/// |chi_CZ> = |0000> + |0101> + |1010> - |1111>, Tr = 4.
inline ProcessMatrix chi_cz_reference() { return ProcessMatrix::from_operator(gates::cz()); }

inline ProcessMatrix chi_identity_reference() { return ProcessMatrix::from_operator(ComplexMatrix::identity(4)); }

/// Tr[chi ref] / (Tr[chi] Tr[ref]).
inline double process_fidelity(const ProcessMatrix& chi, const ProcessMatrix& ref = chi_cz_reference()) {
  const double tc = chi.trace();
  const double tr = ref.trace();
  if (tc <= 0.0 || tr <= 0.0) throw DomainError("process_fidelity: process matrices must have positive trace");
  return (chi.matrix() * ref.matrix()).trace().real() / (tc * tr);
}

/// Uhlmann fidelity of the trace-normalised Choi matrices. Equals
/// process_fidelity whenever `ref` is rank one.
inline double choi_state_fidelity(const ProcessMatrix& a, const ProcessMatrix& b) {
  const double ta = a.trace();
  const double tb = b.trace();
  if (ta <= 0.0 || tb <= 0.0) throw DomainError("choi_state_fidelity: process matrices must have positive trace");
  const ComplexMatrix sa = psd_sqrt(a.matrix() * Complex(1.0 / ta));
  const ComplexMatrix inner_m = sa * (b.matrix() * Complex(1.0 / tb)) * sa;
  const ComplexMatrix herm = (inner_m + inner_m.adjoint()) * Complex(0.5);
  // Roundoff eigenvalues near zero would contribute O(sqrt(eps)) each.
  const auto eig = eigendecompose_hermitian(herm, kTolerance);
  double top = 0.0;
  for (double v : eig.values) top = std::max(top, v);
  double root_trace = 0.0;
  for (double v : eig.values)
    if (v > 1e-12 * top) root_trace += std::sqrt(v);
  return root_trace * root_trace;
}

struct StateResponse {
  double probability;
  /// Absent when probability is 0.
  std::optional<double> fidelity;
};

/// p = Tr[psi^T (x) I chi], f = Tr[psi^T (x) U psi U^dagger chi] / p with U = CZ.
inline StateResponse state_fidelity_and_probability(const ProcessMatrix& chi, const PureState& psi,
                                                    double zero_probability = 1e-15) {
  if (psi.dim() != 4) throw DimensionError("probe state must be two-qubit");
  if (!psi.is_normalized()) throw DomainError("probe state must be normalized");
  const auto out = apply_process(chi, psi.projector());
  if (out.probability <= zero_probability) return {out.probability, std::nullopt};
  const PureState ideal = gates::cz() * psi;
  const double overlap = inner(ideal.amplitudes(), out.rho_out.apply(ideal.amplitudes())).real();
  return {out.probability, overlap / out.probability};
}

/// Success-probability-weighted average state fidelity over one basis.
inline double average_state_fidelity(const ProcessMatrix& chi, const ProbeBasis& basis) {
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& psi : basis.states) {
    const auto resp = state_fidelity_and_probability(chi, psi);
    total += resp.probability;
    if (resp.fidelity) weighted += resp.probability * *resp.fidelity;
  }
  if (total <= 0.0) throw DomainError("zero total success probability in probe basis " + basis.label);
  return weighted / total;
}

struct HofmannBound {
  double f_h;  ///< F_1 + F_2 - 1, not clamped
  double f_1;
  double f_2;
};

inline HofmannBound hofmann_bound(const ProcessMatrix& chi, const ProbeBasis& first, const ProbeBasis& second) {
  const double f1 = average_state_fidelity(chi, first);
  const double f2 = average_state_fidelity(chi, second);
  return {f1 + f2 - 1.0, f1, f2};
}

inline HofmannBound hofmann_bound(const ProcessMatrix& chi) { return hofmann_bound(chi, z_x_basis(), x_z_basis()); }

/// Tr[chi] / 4.
inline double average_success_probability(const ProcessMatrix& chi) { return chi.trace() / 4.0; }

/// (1/4) sum_k p_k over the states of one basis.
inline double average_success_probability(const ProcessMatrix& chi, const ProbeBasis& basis) {
  double s = 0.0;
  for (const auto& psi : basis.states) s += state_fidelity_and_probability(chi, psi).probability;
  return s / 4.0;
}

}  // namespace weakcz::metrics

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

// Bypass-enhanced controlled-Z between two spins with a weak controlled-phase
// interaction U_phi = exp(i phi |11><11|).
//
// Particle A carries four levels |0>..|3>; qubit A is {|0>, |1>} and |2> is
// the auxiliary "bypass" level. The protocol is
//   1. couple |1>_A <-> |2>_A with (t, r),
//   2. apply U_phi on the qubit subspace,
//   3. optionally apply a local phase diag(1, e^{i alpha}) to qubit A,
//   4. couple |1>_A <-> |2>_A again with (t~, r~),
//   5. project A onto {|0>, |1>} and attenuate |0>_A by eta_A.
// With alpha = 0 this is exactly the sequence of the original protocol.

#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "weakcz/errors.hpp"
#include "weakcz/qmath.hpp"

namespace weakcz::spin {

/// Dimension of the simulated space: four levels of A times qubit B.
inline constexpr std::size_t kProtocolDim = 8;

inline constexpr std::size_t protocol_index(std::size_t level_a, std::size_t b) { return 2 * level_a + b; }

struct SpinProtocolParams {
  double phi = std::numbers::pi;  ///< interaction phase, radians
  Complex t = 1.0;
  Complex r = 0.0;
  Complex t_tilde = 1.0;
  Complex r_tilde = 0.0;
  /// Local phase on |1>_A between the interaction and the second coupling.
  double qubit_a_phase = 0.0;

  /// r and r~ as the positive real roots of 1-|t|^2 and 1-|t~|^2.
  static SpinProtocolParams from_transmissions(double phi, Complex t, Complex t_tilde, double qubit_a_phase = 0.0) {
    const auto root = [](Complex x) {
      const double rem = 1.0 - std::norm(x);
      if (rem < -kTolerance) throw DomainError("coupling transmission exceeds unit magnitude");
      return Complex(std::sqrt(std::max(rem, 0.0)), 0.0);
    };
    return SpinProtocolParams{phi, t, root(t), t_tilde, root(t_tilde), qubit_a_phase};
  }

  void validate(double tol = kTolerance) const {
    if (std::abs(std::norm(t) + std::norm(r) - 1.0) > tol) {
      throw DomainError("first coupling violates |t|^2 + |r|^2 = 1");
    }
    if (std::abs(std::norm(t_tilde) + std::norm(r_tilde) - 1.0) > tol) {
      throw DomainError("second coupling violates |t~|^2 + |r~|^2 = 1");
    }
  }
};

struct EffectiveGate {
  ComplexMatrix matrix;  ///< diagonal 4x4
  Complex eta_a;
};

/// diag(1, 1, 1, e^{i phi}).
inline ComplexMatrix controlled_phase(double phi) {
  return ComplexMatrix::diagonal({1.0, 1.0, 1.0, std::polar(1.0, phi)});
}

/// Unitary on the 8-dim protocol space coupling two levels of particle A:
/// |lower> -> t|lower> + r|upper>, |upper> -> t*|upper> - r*|lower>.
inline ComplexMatrix level_coupling(std::size_t lower, std::size_t upper, Complex t, Complex r) {
  if (lower >= 4 || upper >= 4 || lower == upper) throw DomainError("invalid level pair");
  ComplexMatrix op = ComplexMatrix::identity(kProtocolDim);
  for (std::size_t b = 0; b < 2; ++b) {
    const auto lo = protocol_index(lower, b);
    const auto up = protocol_index(upper, b);
    op(lo, lo) = t;
    op(up, lo) = r;
    op(up, up) = std::conj(t);
    op(lo, up) = -std::conj(r);
  }
  return op;
}

/// Filter amplitude applied to |0>_A so the first three diagonal entries of
/// the effective gate coincide.
inline Complex eta_a(const SpinProtocolParams& p) {
  return std::polar(1.0, p.qubit_a_phase) * p.t * p.t_tilde - p.r * std::conj(p.r_tilde);
}

/// Runs the protocol step by step on the 8-dim space and returns the
/// unnormalized post-selected two-qubit state. Its squared norm is the
/// success probability for this input.
inline PureState run_protocol(const PureState& input, const SpinProtocolParams& p) {
  if (input.dim() != 4) throw DimensionError("run_protocol expects a two-qubit state");
  if (!input.is_normalized()) throw DomainError("run_protocol input must be normalized");
  p.validate();

  std::vector<Complex> psi(kProtocolDim);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) psi[protocol_index(a, b)] = input[two_qubit_index(a, b)];
  }

  ComplexMatrix interaction = ComplexMatrix::identity(kProtocolDim);
  interaction(protocol_index(1, 1), protocol_index(1, 1)) = std::polar(1.0, p.phi);

  ComplexMatrix local_phase = ComplexMatrix::identity(kProtocolDim);
  for (std::size_t b = 0; b < 2; ++b) local_phase(protocol_index(1, b), protocol_index(1, b)) = std::polar(1.0, p.qubit_a_phase);

  const ComplexMatrix sequence =
      level_coupling(1, 2, p.t_tilde, p.r_tilde) * local_phase * interaction * level_coupling(1, 2, p.t, p.r);
  psi = sequence.apply(psi);

  // Projection onto the qubit subspace of A, then the |0>_A filter.
  const Complex eta = eta_a(p);
  std::vector<Complex> out(4);
  for (std::size_t b = 0; b < 2; ++b) {
    out[two_qubit_index(0, b)] = eta * psi[protocol_index(0, b)];
    out[two_qubit_index(1, b)] = psi[protocol_index(1, b)];
  }
  return PureState(std::move(out));
}

/// V = diag(eta, eta, eta, e^{i(phi+alpha)} t t~ - r r~*).
inline EffectiveGate effective_gate(const SpinProtocolParams& p) {
  p.validate();
  const Complex eta = eta_a(p);
  const Complex v11 = std::polar(1.0, p.phi + p.qubit_a_phase) * p.t * p.t_tilde - p.r * std::conj(p.r_tilde);
  return EffectiveGate{ComplexMatrix::diagonal({eta, eta, eta, v11}), eta};
}

struct CzCouplingSolution {
  double t_tilde;
  /// Phase alpha of the local gate diag(1, e^{i alpha}) on qubit A.
  double qubit_a_phase;
};

/// Solves r r~ / (t t~) = |cos(phi/2)| for real couplings. Together with
/// alpha = -phi/2 this makes V proportional to CZ.
inline CzCouplingSolution solve_cz_condition(double phi, double t) {
  if (!(phi > 0.0 && phi <= std::numbers::pi)) throw DomainError("phi must lie in (0, pi]");
  const double c = std::abs(std::cos(phi / 2.0));
  const double alpha = -phi / 2.0;
  const bool full_strength = c < 1e-15;
  const bool t_ok = full_strength ? (t > 0.0 && t <= 1.0) : (t > 0.0 && t < 1.0);
  if (!t_ok) {
    throw InfeasibleError("no CZ solution for t = " + std::to_string(t) + "; feasible t range is " +
                          (full_strength ? "(0, 1]" : "(0, 1)"));
  }
  if (full_strength) return {1.0, alpha};
  const double r = std::sqrt(1.0 - t * t);
  const double ratio = c * t / r;  // r~/t~
  return {1.0 / std::sqrt(1.0 + ratio * ratio), alpha};
}

struct OptimalCouplings {
  double t;
  double t_tilde;
  double p_success;
  double qubit_a_phase;

  SpinProtocolParams params(double phi) const { return SpinProtocolParams::from_transmissions(phi, t, t_tilde, qubit_a_phase); }
};

/// |t|^2 = |t~|^2 = 1/(1 + |cos(phi/2)|), P_S = (sin(phi/2) / (1 + |cos(phi/2)|))^2.
inline OptimalCouplings optimal_couplings(double phi) {
  if (!(phi > 0.0 && phi <= std::numbers::pi)) {
    throw DomainError("optimal_couplings: phi must lie in (0, pi]; the gate is impossible at zero coupling");
  }
  const double c = std::abs(std::cos(phi / 2.0));
  const double t = 1.0 / std::sqrt(1.0 + c);
  const double ps = std::pow(std::sin(phi / 2.0) / (1.0 + c), 2);
  return {t, t, ps, -phi / 2.0};
}

}  // namespace weakcz::spin

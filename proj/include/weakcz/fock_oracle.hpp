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

// Brute-force two-photon simulation of passive linear-optical networks.
//
// A network is a unitary U on mode creation operators: a_p^dagger ->
// sum_m U[m][p] a_m^dagger. Every element is a two-mode coupling block
// [[t, -r], [r, t]], the same matrix as the Heisenberg beam splitter.
// Polarisation is carried by separate modes, so wave plates, polarising
// beam splitters and loss ports are all couplings.
//
// Nothing here uses the closed-form coefficient formulas; the gate models
// are checked against it.

#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weakcz/errors.hpp"
#include "weakcz/imperfection_model.hpp"
#include "weakcz/optical_gate.hpp"
#include "weakcz/process_matrix.hpp"
#include "weakcz/qmath.hpp"

namespace weakcz::fock {

class ModeNetwork {
 public:
  explicit ModeNetwork(std::vector<std::string> labels)
      : labels_(std::move(labels)), unitary_(ComplexMatrix::identity(labels_.empty() ? 1 : labels_.size())) {
    if (labels_.empty()) throw DimensionError("ModeNetwork needs at least one mode");
  }

  std::size_t n_modes() const { return labels_.size(); }
  const ComplexMatrix& unitary() const { return unitary_; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::size_t mode(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return i;
    }
    throw DomainError("unknown mode label '" + label + "'");
  }

  /// Appends a coupling: first^dagger -> t first^dagger + r second^dagger,
  /// second^dagger -> -r first^dagger + t second^dagger.
  ModeNetwork& couple(const std::string& first, const std::string& second, double t, double r) {
    const std::size_t i = mode(first);
    const std::size_t j = mode(second);
    if (i == j) throw DomainError("cannot couple a mode to itself");
    ComplexMatrix block = ComplexMatrix::identity(n_modes());
    block(i, i) = t;
    block(j, i) = r;
    block(i, j) = -r;
    block(j, j) = t;
    unitary_ = block * unitary_;
    return *this;
  }

  /// Coupling that keeps a fraction t of `mode` and dumps the rest into `sink`.
  ModeNetwork& attenuate(const std::string& mode_label, const std::string& sink, double t) {
    return couple(mode_label, sink, t, std::sqrt(std::max(0.0, 1.0 - t * t)));
  }

 private:
  std::vector<std::string> labels_;
  ComplexMatrix unitary_;
};

/// Two bosons as a symmetric coefficient matrix K,
/// |psi> = sum_{m,n} K[m][n] a_m^dagger a_n^dagger |vac>.
class TwoPhotonState {
 public:
  explicit TwoPhotonState(ComplexMatrix coefficients) : k_(std::move(coefficients)) {
    if (!k_.is_square()) throw DimensionError("two-photon coefficients must be square");
  }

  /// One photon in each of two modes, or two photons in one mode.
  static TwoPhotonState pair(std::size_t n_modes, std::size_t m, std::size_t n) {
    if (m >= n_modes || n >= n_modes) throw DimensionError("mode index out of range");
    ComplexMatrix k(n_modes, n_modes);
    if (m == n) {
      k(m, m) = 1.0 / std::sqrt(2.0);
    } else {
      k(m, n) = 0.5;
      k(n, m) = 0.5;
    }
    return TwoPhotonState(std::move(k));
  }

  std::size_t n_modes() const { return k_.rows(); }
  const ComplexMatrix& coefficients() const { return k_; }

  /// Amplitude on the normalised Fock state |1_m 1_n> (m != n) or |2_m>.
  Complex amplitude(std::size_t m, std::size_t n) const {
    if (m == n) return std::sqrt(2.0) * k_(m, m);
    return 2.0 * k_(m, n);
  }

  double norm_squared() const {
    double s = 0.0;
    for (std::size_t m = 0; m < n_modes(); ++m) {
      for (std::size_t n = m; n < n_modes(); ++n) s += std::norm(amplitude(m, n));
    }
    return s;
  }

 private:
  ComplexMatrix k_;
};

/// K' = U K U^T; exact for indistinguishable bosons.
inline TwoPhotonState evolve_two_photons(const ModeNetwork& net, const TwoPhotonState& input) {
  if (input.n_modes() != net.n_modes()) {
    throw DimensionError("state has " + std::to_string(input.n_modes()) + " modes, network has " +
                         std::to_string(net.n_modes()));
  }
  const ComplexMatrix& u = net.unitary();
  return TwoPhotonState(u * input.coefficients() * u.transpose());
}

/// Joint amplitudes J[m][n] for photon A in mode m and photon B in mode n
/// when the photons are distinguishable (no symmetrisation).
inline ComplexMatrix distinguishable_evolve(const ModeNetwork& net, std::span<const Complex> photon_a,
                                            std::span<const Complex> photon_b) {
  if (photon_a.size() != net.n_modes() || photon_b.size() != net.n_modes()) {
    throw DimensionError("single-photon state size does not match the network");
  }
  const auto out_a = net.unitary().apply(photon_a);
  const auto out_b = net.unitary().apply(photon_b);
  ComplexMatrix joint(net.n_modes(), net.n_modes());
  for (std::size_t m = 0; m < net.n_modes(); ++m) {
    for (std::size_t n = 0; n < net.n_modes(); ++n) joint(m, n) = out_a[m] * out_b[n];
  }
  return joint;
}

inline std::vector<Complex> single_photon(std::size_t n_modes, std::size_t mode) {
  if (mode >= n_modes) throw DimensionError("mode index out of range");
  std::vector<Complex> v(n_modes);
  v[mode] = 1.0;
  return v;
}

/// Modes carrying logical |0> and |1> of the two photonic qubits.
struct QubitRails {
  std::array<std::size_t, 2> a;
  std::array<std::size_t, 2> b;

  static QubitRails of(const ModeNetwork& net, const std::string& a0, const std::string& a1, const std::string& b0,
                       const std::string& b1) {
    return {{net.mode(a0), net.mode(a1)}, {net.mode(b0), net.mode(b1)}};
  }
};

/// Amplitudes of |ab> = one photon in rail a of qubit A and one in rail b of
/// qubit B, as a two-qubit column (index 2a + b).
inline std::array<Complex, 4> postselect_coincidence(const TwoPhotonState& state, const QubitRails& out) {
  std::array<Complex, 4> col{};
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) col[two_qubit_index(a, b)] = state.amplitude(out.a[a], out.b[b]);
  }
  return col;
}

/// 4x4 conditional transformation of the network for indistinguishable
/// photons; column jk is the post-selected output of input |jk>.
inline ComplexMatrix conditional_transformation(const ModeNetwork& net, const QubitRails& rails) {
  ComplexMatrix w(4, 4);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      const auto out = evolve_two_photons(net, TwoPhotonState::pair(net.n_modes(), rails.a[j], rails.b[k]));
      const auto col = postselect_coincidence(out, rails);
      for (std::size_t row = 0; row < 4; ++row) w(row, two_qubit_index(j, k)) = col[row];
    }
  }
  return w;
}

/// Conditional transformations for distinguishable photons, split by whether
/// each photon stays on its own qubit's side (both transmitted at the central
/// coupling) or swaps sides (both reflected).
struct DistinguishableBranches {
  ComplexMatrix transmitted;
  ComplexMatrix reflected;
};

inline DistinguishableBranches distinguishable_transformations(const ModeNetwork& net, const QubitRails& rails) {
  DistinguishableBranches br{ComplexMatrix(4, 4), ComplexMatrix(4, 4)};
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      const auto joint = distinguishable_evolve(net, single_photon(net.n_modes(), rails.a[j]),
                                                single_photon(net.n_modes(), rails.b[k]));
      const std::size_t col = two_qubit_index(j, k);
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
          br.transmitted(two_qubit_index(a, b), col) = joint(rails.a[a], rails.b[b]);
          br.reflected(two_qubit_index(a, b), col) = joint(rails.b[b], rails.a[a]);
        }
      }
    }
  }
  return br;
}

/// A network together with the rails that define its qubits.
struct PhotonicGate {
  ModeNetwork network;
  QubitRails rails;
};

/// Idealised bypass scheme: modes A0, A1, B0, B1, C plus vacuum ports for
/// the A0/B0 attenuators.
inline PhotonicGate ideal_bypass_network(const optical::OpticalSchemeParams& p) {
  p.validate();
  const auto central = p.central();
  ModeNetwork net({"A0", "A1", "B0", "B1", "C", "vac_A", "vac_B"});
  net.couple("A1", "C", p.t_x, p.r_x)
      .couple("A1", "B1", central.t, central.r)
      .couple("C", "A1", p.t_y, p.r_y)
      .attenuate("A0", "vac_A", p.t_a)
      .attenuate("B0", "vac_B", p.t_b);
  const auto rails = QubitRails::of(net, "A0", "A1", "B0", "B1");
  return {std::move(net), rails};
}

/// Polarisation-resolved model of the demonstration setup.
///
/// Signal photon: upper arm H is A0 (upper arm V is dropped by the output
/// displacer), lower arm V is A1 and lower arm H is the bypass C. Idler
/// photon: H is B0, V is B1. HWPX mixes A1/C, the central PPBS couples the
/// lower arm to the idler per polarisation and leaks the upper arm into a
/// loss port, HWPY recombines C into A1, HWPA attenuates A0. The idler-side
/// PPBSB + HWPB pair is represented by its net effect: B0 keeps t, B1 keeps
/// t_H.
inline PhotonicGate experimental_network(const model::SetupParams& p) {
  const auto a = model::Amplitudes::of(p);
  const double r_a = std::sqrt(std::max(0.0, 1.0 - a.t_a * a.t_a));
  ModeNetwork net({"A0", "A0_V", "A1", "C", "B0", "B1", "loss_upper", "loss_B0", "loss_B1"});
  net.couple("A1", "C", a.t_x, a.r_x)            // HWPX
      .couple("A1", "B1", a.t, a.r)              // PPBS, vertical
      .couple("C", "B0", a.t_h, a.r_h)           // PPBS, horizontal
      .couple("A0", "loss_upper", a.t_h, a.r_h)  // PPBS, upper arm
      .couple("C", "A1", a.t_y, a.r_y)           // HWPY
      .couple("A0", "A0_V", a.t_a, r_a)          // HWPA
      .couple("B0", "loss_B0", a.t, a.r)         // PPBSB on former V
      .couple("B1", "loss_B1", a.t_h, a.r_h);    // PPBSB on former H
  const auto rails = QubitRails::of(net, "A0", "A1", "B0", "B1");
  return {std::move(net), rails};
}

struct OracleProcess {
  ProcessMatrix indistinguishable;
  ProcessMatrix transmitted;
  ProcessMatrix reflected;
  ProcessMatrix mixture;  ///< q chi_I + (1 - q)(chi_R + chi_T)
};

/// Process matrix of a photonic gate with partially distinguishable photons,
/// assembled from brute-force evolution.
inline OracleProcess assemble_process_matrix(const PhotonicGate& gate, double q) {
  const auto w_i = conditional_transformation(gate.network, gate.rails);
  const auto br = distinguishable_transformations(gate.network, gate.rails);
  ProcessMatrix chi_i = ProcessMatrix::from_operator(w_i);
  ProcessMatrix chi_t = ProcessMatrix::from_operator(br.transmitted);
  ProcessMatrix chi_r = ProcessMatrix::from_operator(br.reflected);
  ProcessMatrix mix = q * chi_i + (1.0 - q) * chi_r + (1.0 - q) * chi_t;
  return {std::move(chi_i), std::move(chi_t), std::move(chi_r), std::move(mix)};
}

inline OracleProcess oracle_process_matrix(const model::SetupParams& p) {
  return assemble_process_matrix(experimental_network(p), p.q());
}

}  // namespace weakcz::fock

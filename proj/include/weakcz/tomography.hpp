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

// Simulated process tomography of a probabilistic two-qubit gate.
//
// Every cell (input state, measurement basis, outcome) has a rate
// <v|chi|v> with v = conj(psi_in) (x) phi_out. Six input states and three
// bases per qubit make 36 x 9 x 4 = 1296 cells, and sum_cells |v><v| = 81 I,
// which keeps the RrhoR fixed point free of a normalisation operator.
//
// The estimator maximises the Poisson likelihood sum n log(lambda) - lambda
// over PSD chi without a trace constraint.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "weakcz/errors.hpp"
#include "weakcz/process_matrix.hpp"
#include "weakcz/qmath.hpp"

namespace weakcz::tomography {

inline constexpr std::size_t kStatesPerQubit = 6;
inline constexpr std::size_t kBasesPerQubit = 3;
inline constexpr std::size_t kInputs = kStatesPerQubit * kStatesPerQubit;  // 36
inline constexpr std::size_t kBases = kBasesPerQubit * kBasesPerQubit;      // 9
inline constexpr std::size_t kOutcomes = 4;
inline constexpr std::size_t kCells = kInputs * kBases * kOutcomes;  // 1296

/// |0>, |1>, |+>, |->, |r>, |l>.
inline std::array<PureState, kStatesPerQubit> probe_states() {
  using namespace states;
  return {zero(), one(), plus(), minus(), right(), left()};
}

/// Z, X and Y bases as pairs of orthonormal states.
inline std::array<std::array<PureState, 2>, kBasesPerQubit> measurement_bases() {
  using namespace states;
  return {{{zero(), one()}, {plus(), minus()}, {right(), left()}}};
}

inline const std::array<std::string, kBasesPerQubit>& basis_labels() {
  static const std::array<std::string, kBasesPerQubit> labels{"Z", "X", "Y"};
  return labels;
}

struct TomographySettings {
  double counts_scale = 1e5;  ///< expected counts per setting for a unit success probability
  std::uint64_t seed = 1;
  std::size_t max_iterations = 100000;
  double tolerance = 1e-10;  ///< relative log-likelihood change

  void validate() const {
    if (!(counts_scale >= 0.0) || !std::isfinite(counts_scale)) throw DomainError("counts scale must be >= 0");
    if (max_iterations == 0) throw DomainError("iteration cap must be positive");
    if (!(tolerance > 0.0)) throw DomainError("convergence tolerance must be positive");
  }
};

struct CountRecord {
  std::size_t input_idx;    ///< 6 * state_A + state_B
  std::size_t basis_idx;    ///< 3 * basis_A + basis_B
  std::size_t outcome_idx;  ///< 2 * outcome_A + outcome_B
  std::uint64_t count;
};

inline std::size_t cell_index(std::size_t input, std::size_t basis, std::size_t outcome) {
  return (input * kBases + basis) * kOutcomes + outcome;
}

/// conj(psi_in) (x) phi_out for one cell.
inline std::vector<Complex> measurement_vector(std::size_t input, std::size_t basis, std::size_t outcome) {
  if (input >= kInputs || basis >= kBases || outcome >= kOutcomes) throw DimensionError("tomography cell out of range");
  static const auto probes = probe_states();
  static const auto bases = measurement_bases();
  const auto conj_of = [](const PureState& s) {
    std::vector<Complex> v(s.amplitudes().begin(), s.amplitudes().end());
    for (auto& x : v) x = std::conj(x);
    return v;
  };
  const auto in_a = conj_of(probes[input / kStatesPerQubit]);
  const auto in_b = conj_of(probes[input % kStatesPerQubit]);
  const auto& out_a = bases[basis / kBasesPerQubit][outcome / 2];
  const auto& out_b = bases[basis % kBasesPerQubit][outcome % 2];
  return tensor(tensor(in_a, in_b), tensor(out_a.amplitudes(), out_b.amplitudes()));
}

namespace detail {

using Matrix16 = Eigen::Matrix<Complex, 16, 16>;
using Vector16 = Eigen::Matrix<Complex, 16, 1>;

inline const std::vector<Vector16>& cell_vectors() {
  static const std::vector<Vector16> vs = [] {
    std::vector<Vector16> out(kCells);
    for (std::size_t i = 0; i < kInputs; ++i) {
      for (std::size_t b = 0; b < kBases; ++b) {
        for (std::size_t o = 0; o < kOutcomes; ++o) {
          const auto v = measurement_vector(i, b, o);
          for (Eigen::Index k = 0; k < 16; ++k) out[cell_index(i, b, o)](k) = v[static_cast<std::size_t>(k)];
        }
      }
    }
    return out;
  }();
  return vs;
}

/// sum_cells |v><v| = kFrame * I.
inline constexpr double kFrame = 81.0;

inline Matrix16 to_eigen(const ComplexMatrix& m) {
  Matrix16 e;
  for (Eigen::Index i = 0; i < 16; ++i) {
    for (Eigen::Index j = 0; j < 16; ++j) e(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return e;
}

inline ComplexMatrix from_eigen(const Matrix16& e) {
  ComplexMatrix m(16, 16);
  for (Eigen::Index i = 0; i < 16; ++i) {
    for (Eigen::Index j = 0; j < 16; ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  }
  return m;
}

inline std::vector<double> rates_of(const Matrix16& chi) {
  const auto& vs = cell_vectors();
  std::vector<double> r(kCells);
  for (std::size_t c = 0; c < kCells; ++c) r[c] = std::max(0.0, (vs[c].adjoint() * chi * vs[c])(0, 0).real());
  return r;
}

inline Matrix16 hermitian_part(const Matrix16& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace detail

/// Rate of every cell, indexed by cell_index. For each (input, basis) the four
/// outcome rates add up to the input's success probability.
inline std::vector<double> expected_rates(const ProcessMatrix& chi) {
  return detail::rates_of(detail::to_eigen(chi.matrix()));
}

/// Independent Poisson draws with mean rate * total_scale. A zero mean
/// always gives a zero count.
inline std::vector<CountRecord> simulate_counts(std::span<const double> rates, double total_scale, std::uint64_t seed) {
  if (rates.size() != kCells) throw DimensionError("expected " + std::to_string(kCells) + " rates");
  if (!(total_scale >= 0.0)) throw DomainError("total scale must be >= 0");
  std::mt19937_64 rng(seed);
  std::vector<CountRecord> out;
  out.reserve(kCells);
  for (std::size_t i = 0; i < kInputs; ++i) {
    for (std::size_t b = 0; b < kBases; ++b) {
      for (std::size_t o = 0; o < kOutcomes; ++o) {
        const double mean = rates[cell_index(i, b, o)] * total_scale;
        std::uint64_t n = 0;
        if (mean > 0.0) n = std::poisson_distribution<std::uint64_t>(mean)(rng);
        out.push_back({i, b, o, n});
      }
    }
  }
  return out;
}

/// Counts laid out by cell_index; repeated cells add up.
inline std::vector<double> counts_by_cell(std::span<const CountRecord> counts) {
  std::vector<double> n(kCells, 0.0);
  for (const auto& rec : counts) n[cell_index(rec.input_idx, rec.basis_idx, rec.outcome_idx)] += double(rec.count);
  return n;
}

struct Reconstruction {
  ProcessMatrix raw;         ///< in units of the expected-rate model (counts / counts_scale)
  ProcessMatrix normalized;  ///< Tr = 4
  std::size_t iterations;
  bool converged;
  std::vector<double> log_likelihood;  ///< one entry per accepted step, starting with the initial guess
};

namespace detail {

inline double log_likelihood(std::span<const double> n, std::span<const double> lambda) {
  double l = 0.0;
  for (std::size_t c = 0; c < n.size(); ++c) {
    if (n[c] > 0.0) l += n[c] * std::log(std::max(lambda[c], 1e-300));
    l -= lambda[c];
  }
  return l;
}

/// Least-squares fit of chi to the observed rates, projected onto PSD
/// matrices and mixed with a little of the identity so no cell starts at 0.
inline Matrix16 linear_inversion_start(std::span<const double> observed) {
  const auto& vs = cell_vectors();
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(kCells), 256);
  Eigen::VectorXcd y(static_cast<Eigen::Index>(kCells));
  for (std::size_t c = 0; c < kCells; ++c) {
    const auto row = static_cast<Eigen::Index>(c);
    for (Eigen::Index i = 0; i < 16; ++i) {
      for (Eigen::Index j = 0; j < 16; ++j) a(row, 16 * i + j) = std::conj(vs[c](i)) * vs[c](j);
    }
    y(row) = observed[c];
  }
  const Eigen::VectorXcd x = a.completeOrthogonalDecomposition().solve(y);
  Matrix16 chi;
  for (Eigen::Index i = 0; i < 16; ++i) {
    for (Eigen::Index j = 0; j < 16; ++j) chi(i, j) = x(16 * i + j);
  }
  Eigen::SelfAdjointEigenSolver<Matrix16> eig(hermitian_part(chi));
  Eigen::Matrix<double, 16, 1> vals = eig.eigenvalues().cwiseMax(0.0);
  const double tr = vals.sum();
  constexpr double kMix = 1e-4;
  const double floor = tr > 0.0 ? kMix * tr / 16.0 : 1.0;
  vals = (1.0 - kMix) * vals + Eigen::Matrix<double, 16, 1>::Constant(floor);
  return eig.eigenvectors() * vals.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

/// Scales chi so that sum lambda = sum n, the Poisson-optimal overall factor.
inline void rescale(Matrix16& chi, std::vector<double>& lambda, double total_counts) {
  double s = 0.0;
  for (double l : lambda) s += l;
  if (s <= 0.0) throw DomainError("mle_reconstruct: model predicts no counts");
  const double f = total_counts / s;
  chi *= f;
  for (double& l : lambda) l *= f;
}

}  // namespace detail

/// Maximum-likelihood chi from cell counts (already divided by the counts
/// scale, so non-integer values are fine). Each step is
/// chi <- S chi S with S = I + eps (R - I), R = sum (n/lambda) |v><v| / 81,
/// starting at eps = 1 and halving until the likelihood does not drop.
inline Reconstruction mle_reconstruct_observed(std::span<const double> observed, const TomographySettings& s = {}) {
  s.validate();
  if (observed.size() != kCells) throw DimensionError("expected " + std::to_string(kCells) + " observed counts");
  double total = 0.0;
  for (double n : observed) {
    if (n < 0.0 || !std::isfinite(n)) throw DomainError("counts must be finite and >= 0");
    total += n;
  }
  if (total <= 0.0) throw DomainError("mle_reconstruct: all counts are zero");

  const auto& vs = detail::cell_vectors();
  detail::Matrix16 chi = detail::linear_inversion_start(observed);
  std::vector<double> lambda = detail::rates_of(chi);
  detail::rescale(chi, lambda, total);
  double l = detail::log_likelihood(observed, lambda);
  std::vector<double> history{l};

  const detail::Matrix16 id = detail::Matrix16::Identity();
  bool converged = false;
  std::size_t it = 0;
  while (it < s.max_iterations) {
    ++it;
    detail::Matrix16 r = detail::Matrix16::Zero();
    for (std::size_t c = 0; c < kCells; ++c) {
      if (observed[c] <= 0.0) continue;
      r += (observed[c] / std::max(lambda[c], 1e-300)) * (vs[c] * vs[c].adjoint());
    }
    r = detail::hermitian_part(r) / detail::kFrame;

    double eps = 1.0;
    bool accepted = false;
    detail::Matrix16 next;
    std::vector<double> next_lambda;
    double next_l = l;
    for (int halvings = 0; halvings < 40; ++halvings, eps *= 0.5) {
      const detail::Matrix16 step = id + eps * (r - id);
      next = detail::hermitian_part(step * chi * step);
      next_lambda = detail::rates_of(next);
      detail::rescale(next, next_lambda, total);
      next_l = detail::log_likelihood(observed, next_lambda);
      if (next_l >= l) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      converged = true;  // no ascent direction left at double precision
      break;
    }
    const double rel = std::abs(next_l - l) / std::max(1.0, std::abs(l));
    chi = next;
    lambda = std::move(next_lambda);
    l = next_l;
    history.push_back(l);
    if (rel < s.tolerance) {
      converged = true;
      break;
    }
  }

  ProcessMatrix raw(detail::from_eigen(chi));
  ProcessMatrix scaled = s.counts_scale > 0.0 ? (1.0 / s.counts_scale) * raw : raw;
  return {scaled, scaled.normalized(4.0), it, converged, std::move(history)};
}

inline Reconstruction mle_reconstruct(std::span<const CountRecord> counts, const TomographySettings& s = {}) {
  return mle_reconstruct_observed(counts_by_cell(counts), s);
}

/// Expected counts with no sampling noise.
inline std::vector<double> noiseless_counts(std::span<const double> rates, double total_scale) {
  std::vector<double> n(rates.begin(), rates.end());
  for (double& x : n) x *= total_scale;
  return n;
}

}  // namespace weakcz::tomography

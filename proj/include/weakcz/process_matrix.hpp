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

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "weakcz/errors.hpp"
#include "weakcz/qmath.hpp"

namespace weakcz {

/// Choi matrix of a (possibly probabilistic) two-qubit operation on
/// input (x) output. Not trace-normalised: Tr/4 is the average success
/// probability.
class ProcessMatrix {
 public:
  explicit ProcessMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != 16 || m_.cols() != 16) throw DimensionError("ProcessMatrix must be 16x16, got " + m_.shape());
  }

  /// |v><v| for a 16-component Choi vector.
  static ProcessMatrix rank_one(std::span<const Complex> choi_vector) {
    if (choi_vector.size() != 16) throw DimensionError("Choi vector must have 16 components");
    return ProcessMatrix(ComplexMatrix::outer(choi_vector, choi_vector));
  }

  /// Choi vector sum_j |j> (x) K|j> of a 4x4 conditional transformation K.
  static std::vector<Complex> choi_vector(const ComplexMatrix& k) {
    if (k.rows() != 4 || k.cols() != 4) throw DimensionError("conditional transformation must be 4x4");
    std::vector<Complex> v(16);
    for (std::size_t in = 0; in < 4; ++in) {
      for (std::size_t out = 0; out < 4; ++out) v[choi_index(in, out)] = k(out, in);
    }
    return v;
  }

  static ProcessMatrix from_operator(const ComplexMatrix& k) { return rank_one(choi_vector(k)); }

  const ComplexMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }
  bool is_positive_semidefinite(double tol = kTolerance) const { return weakcz::is_positive_semidefinite(m_, tol); }

  /// Rescaled copy with Tr = `target` (Tr = 4 is the usual presentation).
  ProcessMatrix normalized(double target = 4.0) const {
    const double tr = trace();
    if (tr <= 0.0) throw DomainError("cannot normalise a process matrix with non-positive trace");
    return ProcessMatrix(m_ * Complex(target / tr));
  }

  friend ProcessMatrix operator+(const ProcessMatrix& a, const ProcessMatrix& b) { return ProcessMatrix(a.m_ + b.m_); }
  friend ProcessMatrix operator*(double s, const ProcessMatrix& a) { return ProcessMatrix(a.m_ * Complex(s)); }

 private:
  ComplexMatrix m_;
};

struct ProcessOutput {
  ComplexMatrix rho_out;  ///< unnormalised output state
  double probability;     ///< Tr[rho_out]
};

inline bool is_density_matrix(const ComplexMatrix& rho, double tol = kTolerance) {
  return rho.rows() == 4 && rho.cols() == 4 && std::abs(rho.trace() - 1.0) <= tol && is_positive_semidefinite(rho, tol);
}

/// rho_out = Tr_in[(rho_in^T (x) I) chi].
inline ProcessOutput apply_process(const ProcessMatrix& chi, const ComplexMatrix& rho_in) {
  if (rho_in.rows() != 4 || rho_in.cols() != 4) throw DimensionError("apply_process expects a 4x4 input state");
  if (!is_density_matrix(rho_in)) throw DomainError("apply_process: input is not a unit-trace PSD density matrix");
  const ComplexMatrix lifted = tensor(transpose_in_computational_basis(rho_in), ComplexMatrix::identity(4));
  ComplexMatrix rho_out = partial_trace_in(lifted * chi.matrix());
  const double p = rho_out.trace().real();
  return {std::move(rho_out), p};
}

}  // namespace weakcz

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

// Dense complex linear algebra for the small (<= 16) dimensions used by the
// gate models.
//
// Index conventions, fixed for the whole library:
//   * two-qubit basis order is |00>, |01>, |10>, |11>; qubit A is the slow
//     index, so |ab> has index 2*a + b.
//   * Choi (process) matrices live on input (x) output; the basis vector
//     |in>|out> has index 4*in + out.
//   * tensor(a, b) puts the row index of `a` on the slow side.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weakcz/errors.hpp"

namespace weakcz {

using Complex = std::complex<double>;

/// Default tolerance for Hermitian/unitary/PSD property checks.
inline constexpr double kTolerance = 1e-9;

/// Largest matrix dimension supported by contract.
inline constexpr std::size_t kMaxDimension = 16;

inline constexpr std::size_t two_qubit_index(std::size_t a, std::size_t b) { return 2 * a + b; }
inline constexpr std::size_t choi_index(std::size_t in, std::size_t out) { return 4 * in + out; }

class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols) : ComplexMatrix(rows, cols, {}) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
      throw DimensionError("ComplexMatrix dimensions must be positive");
    }
    if (entries_.empty()) {
      entries_.assign(rows * cols, Complex{});
    } else if (entries_.size() != rows * cols) {
      throw DimensionError("ComplexMatrix entry count " + std::to_string(entries_.size()) +
                           " does not match " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : ComplexMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged initializer for ComplexMatrix");
      std::copy(row.begin(), row.end(), entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
      ++r;
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<Complex> diag) {
    return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
  }

  /// |ket><bra|
  static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    ComplexMatrix m(ket.size(), bra.size());
    for (std::size_t i = 0; i < ket.size(); ++i) {
      for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
    }
    return t;
  }

  Complex trace() const {
    require_square("trace");
    Complex s{};
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
  }

  std::vector<Complex> apply(std::span<const Complex> v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
    std::vector<Complex> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Complex s{};
      for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
      out[r] = s;
    }
    return out;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "+");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "-");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("cannot multiply " + a.shape() + " by " + b.shape());
    }
    ComplexMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
      }
    }
    return p;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_square(const char* op) const {
    if (!is_square()) throw DimensionError(std::string(op) + " needs a square matrix, got " + shape());
  }
  void require_same_shape(const ComplexMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("shape mismatch in ") + op + ": " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

/// Largest entrywise |a - b|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff shape mismatch: " + a.shape() + " vs " + b.shape());
  }
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = kTolerance) {
  if (!m.is_square()) return false;
  const double scale = std::max(1.0, m.max_abs());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol * scale) return false;
    }
  }
  return true;
}

inline bool is_unitary(const ComplexMatrix& m, double tol = kTolerance) {
  if (!m.is_square()) return false;
  return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows())) <= tol;
}

/// Kronecker product; (a (x) b)[i*b.rows()+k][j*b.cols()+l] = a[i][j] * b[k][l].
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

inline std::vector<Complex> tensor(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x * y);
  }
  return out;
}

/// Traces out the input factor of a 16x16 operator on input (x) output.
inline ComplexMatrix partial_trace_in(const ComplexMatrix& m) {
  if (m.rows() != 16 || m.cols() != 16) {
    throw DimensionError("partial_trace_in expects a 16x16 matrix, got " + m.shape());
  }
  ComplexMatrix out(4, 4);
  for (std::size_t in = 0; in < 4; ++in) {
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) out(r, c) += m(choi_index(in, r), choi_index(in, c));
    }
  }
  return out;
}

/// Plain transpose, no conjugation.
inline ComplexMatrix transpose_in_computational_basis(const ComplexMatrix& m) { return m.transpose(); }

struct HermitianEigensystem {
  std::vector<double> values;  ///< ascending
  ComplexMatrix vectors;       ///< column k belongs to values[k]
};

inline HermitianEigensystem eigendecompose_hermitian(const ComplexMatrix& m, double tol = kTolerance) {
  if (!m.is_square()) throw DimensionError("eigendecompose_hermitian needs a square matrix, got " + m.shape());
  if (m.rows() > kMaxDimension) throw DimensionError("dimension " + m.shape() + " exceeds 16");
  if (!is_hermitian(m, tol)) throw DomainError("eigendecompose_hermitian: matrix is not Hermitian");

  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd em(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // Symmetrize so round-off in the input cannot leak into the solver.
      em(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em);
  if (solver.info() != Eigen::Success) throw DomainError("eigendecompose_hermitian did not converge");

  HermitianEigensystem out{std::vector<double>(m.rows()), ComplexMatrix(m.rows(), m.rows())};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      out.vectors(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = solver.eigenvectors()(i, k);
    }
  }
  return out;
}

/// Hermitian within `tol` and every eigenvalue >= -tol * max(1, |m|_max).
inline bool is_positive_semidefinite(const ComplexMatrix& m, double tol = kTolerance) {
  if (!is_hermitian(m, tol)) return false;
  const auto eig = eigendecompose_hermitian(m, tol);
  return eig.values.front() >= -tol * std::max(1.0, m.max_abs());
}

/// Rebuilds Q diag(f(lambda)) Q^dagger from an eigensystem.
template <typename F>
ComplexMatrix spectral_map(const HermitianEigensystem& eig, F&& f) {
  const std::size_t n = eig.values.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex qik = eig.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += qik * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

/// Square root of a PSD matrix; small negative eigenvalues are clipped to 0.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol = kTolerance) {
  return spectral_map(eigendecompose_hermitian(m, tol), [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("inner product size mismatch");
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Pure-state vector. Post-selected outputs are deliberately left
/// unnormalized; their squared norm is the event probability.
class PureState {
 public:
  explicit PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) throw DimensionError("PureState needs a positive dimension");
  }

  static PureState basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionError("basis index out of range");
    std::vector<Complex> a(dim);
    a[index] = 1.0;
    return PureState(std::move(a));
  }

  static PureState product(const PureState& a, const PureState& b) {
    return PureState(tensor(a.amplitudes(), b.amplitudes()));
  }

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return s;
  }

  bool is_normalized(double tol = kTolerance) const { return std::abs(norm_squared() - 1.0) <= tol; }

  PureState normalized() const {
    const double n = std::sqrt(norm_squared());
    if (n == 0.0) throw DomainError("cannot normalize the zero vector");
    std::vector<Complex> a(amplitudes_);
    for (auto& x : a) x /= n;
    return PureState(std::move(a));
  }

  ComplexMatrix projector() const { return ComplexMatrix::outer(amplitudes_, amplitudes_); }

  friend PureState operator*(const ComplexMatrix& m, const PureState& s) { return PureState(m.apply(s.amplitudes_)); }

 private:
  std::vector<Complex> amplitudes_;
};

namespace states {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline PureState zero() { return PureState({1.0, 0.0}); }
inline PureState one() { return PureState({0.0, 1.0}); }
inline PureState plus() { return PureState({kInvSqrt2, kInvSqrt2}); }
inline PureState minus() { return PureState({kInvSqrt2, -kInvSqrt2}); }
/// (|0> + i|1>)/sqrt2
inline PureState right() { return PureState({kInvSqrt2, Complex(0.0, kInvSqrt2)}); }
/// (|0> - i|1>)/sqrt2
inline PureState left() { return PureState({kInvSqrt2, Complex(0.0, -kInvSqrt2)}); }

}  // namespace states

namespace gates {

inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
inline ComplexMatrix cz() { return ComplexMatrix::diagonal({1.0, 1.0, 1.0, -1.0}); }

}  // namespace gates

}  // namespace weakcz

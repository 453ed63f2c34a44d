// Copyright 2026 The qteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex linear algebra for registers of at most eight qubits.
//
// Basis convention used throughout the library: qubit position 0 is the most
// significant bit of a basis index, so index b of an n-qubit register encodes
// |q0 q1 ... q(n-1)>. The protocol's physical qubits 1..5 map to positions
// 0..4.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qteleport/errors.hpp"
#include "qteleport/tolerances.hpp"

namespace qtele {

using cplx = std::complex<double>;

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    detail::require(entries_.size() == rows_ * cols_,
                    "ComplexMatrix: entry count does not match shape");
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      detail::require(row.size() == cols_, "ComplexMatrix: ragged initializer");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix column(std::span<const cplx> v) {
    return ComplexMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const cplx> entries() const { return entries_; }
  std::span<cplx> entries() { return entries_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  cplx trace() const {
    detail::require(is_square(), "trace: matrix is not square");
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : entries_) s += std::norm(z);
    return std::sqrt(s);
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    detail::require(rows_ == o.rows_ && cols_ == o.cols_, "operator+=: shape mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    detail::require(rows_ == o.rows_ && cols_ == o.cols_, "operator-=: shape mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& z : entries_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require(a.cols_ == b.rows_, "matrix product: inner dimensions differ");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

inline double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols(),
                  "max_abs_difference: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

/// Entrywise comparison with an absolute tolerance.
inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                         double tol = tol::kEntrywise) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs_difference(a, b) <= tol;
}

/// Tensor product; the left factor occupies the more significant qubits.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = tol::kEntrywise) {
  if (!m.is_square()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
  return true;
}

inline bool is_unitary(const ComplexMatrix& m, double tol = tol::kEntrywise) {
  if (!m.is_square()) return false;
  return approx_equal(m.adjoint() * m, ComplexMatrix::identity(m.rows()), tol);
}

/// Returns log2(dim) or throws when dim is not a power of two in range.
inline std::size_t qubits_for_dimension(std::size_t dim) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  detail::require((std::size_t{1} << n) == dim && dim >= 2,
                  "dimension " + std::to_string(dim) + " is not a power of two >= 2");
  detail::require(n <= tol::kMaxQubits, "register exceeds the supported qubit count");
  return n;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

inline HermitianEigen jacobi(ComplexMatrix a, bool want_vectors) {
  require(a.is_square(), "hermitian_eigen: matrix is not square");
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = r; c < a.cols(); ++c)
      worst = std::max(worst, std::abs(a(r, c) - std::conj(a(c, r))));
  require(worst <= tol::kHermitianInput,
          "hermitian_eigen: input is not Hermitian (max asymmetry " +
              std::to_string(worst) + ")");

  const std::size_t n = a.rows();
  // Symmetrize so rounding in the input cannot accumulate.
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix();

  int sweep = 0;
  while (off_diagonal_norm(a) >= tol::kJacobiOffDiagonal) {
    if (sweep++ >= tol::kJacobiMaxSweeps)
      throw ConvergenceError("hermitian_eigen: no convergence after " +
                             std::to_string(tol::kJacobiMaxSweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag < 1e-300) continue;
        // Phase-rotate q so the pivot is real, then a real Jacobi rotation.
        const cplx phase = a(p, q) / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // W restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const cplx w_pp = c;
        const cplx w_pq = s;
        const cplx w_qp = -s * std::conj(phase);
        const cplx w_qq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * w_pp + akq * w_qp;
          a(k, q) = akp * w_pq + akq * w_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(w_pp) * apk + std::conj(w_qp) * aqk;
          a(q, k) = std::conj(w_pq) * apk + std::conj(w_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p);
            const cplx vkq = v(k, q);
            v(k, p) = vkp * w_pp + vkq * w_qp;
            v(k, q) = vkp * w_pq + vkq * w_qq;
          }
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  HermitianEigen out;
  out.values.reserve(n);
  for (std::size_t k : order) out.values.push_back(a(k, k).real());
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t r = 0; r < n; ++r) out.vectors(r, col) = v(r, order[col]);
  }
  return out;
}

}  // namespace detail

/// Eigenvalues (ascending) and eigenvectors by cyclic complex Jacobi rotations.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& h) { return detail::jacobi(h, true); }

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  return detail::jacobi(h, false).values;
}

// ---------------------------------------------------------------------------
// States

/// Normalized pure state of 1..8 qubits.
class StateVector {
 public:
  explicit StateVector(std::vector<cplx> amplitudes) : amplitudes_(std::move(amplitudes)) {
    num_qubits_ = qubits_for_dimension(amplitudes_.size());
    double n2 = 0.0;
    for (const auto& z : amplitudes_) n2 += std::norm(z);
    detail::require(std::abs(n2 - 1.0) <= tol::kNorm,
                    "StateVector: squared norm " + std::to_string(n2) + " is not 1");
  }

  /// Computational basis state |index> of an n-qubit register.
  static StateVector basis(std::size_t num_qubits, std::size_t index) {
    std::vector<cplx> amps(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    detail::require(index < amps.size(), "StateVector::basis: index out of range");
    amps[index] = 1.0;
    return StateVector(std::move(amps));
  }

  /// Rescales an arbitrary nonzero vector to unit norm.
  static StateVector normalized(std::vector<cplx> amplitudes) {
    double n2 = 0.0;
    for (const auto& z : amplitudes) n2 += std::norm(z);
    detail::require(n2 > 0.0, "StateVector::normalized: zero vector");
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& z : amplitudes) z *= scale;
    return StateVector(std::move(amplitudes));
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  cplx operator[](std::size_t i) const { return amplitudes_[i]; }

  /// <this|other>
  cplx inner(const StateVector& other) const {
    detail::require(dim() == other.dim(), "inner: dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < dim(); ++i) s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    return s;
  }

  ComplexMatrix projector() const {
    ComplexMatrix p(dim(), dim());
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < dim(); ++c) p(r, c) = amplitudes_[r] * std::conj(amplitudes_[c]);
    return p;
  }

  StateVector tensor(const StateVector& other) const {
    std::vector<cplx> out;
    out.reserve(dim() * other.dim());
    for (const auto& a : amplitudes_)
      for (const auto& b : other.amplitudes_) out.push_back(a * b);
    return StateVector(std::move(out));
  }

 private:
  std::size_t num_qubits_ = 0;
  std::vector<cplx> amplitudes_;
};

/// |<a|b>|^2, insensitive to global phase.
inline double overlap_fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(a.inner(b));
}

/// Unnormalized projection result with its squared norm (the branch weight).
struct ProjectedState {
  std::vector<cplx> amplitudes;
  double norm_sq = 0.0;

  StateVector normalized() const { return StateVector::normalized(amplitudes); }
};

/// Density operator of 1..8 qubits: Hermitian, unit trace, positive
/// semidefinite (all within the library tolerances).
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    detail::require(matrix_.is_square(), "DensityMatrix: matrix is not square");
    num_qubits_ = qubits_for_dimension(matrix_.rows());
    detail::require(is_hermitian(matrix_, tol::kEntrywise), "DensityMatrix: not Hermitian");
    const cplx tr = matrix_.trace();
    detail::require(std::abs(tr - 1.0) <= tol::kNorm,
                    "DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
    const auto ev = hermitian_eigenvalues(matrix_);
    detail::require(ev.front() >= tol::kMinEigenvalue,
                    "DensityMatrix: negative eigenvalue " + std::to_string(ev.front()));
  }

  static DensityMatrix from_pure(const StateVector& psi) { return DensityMatrix(psi.projector()); }

  static DensityMatrix maximally_mixed(std::size_t num_qubits) {
    const std::size_t d = std::size_t{1} << num_qubits;
    return DensityMatrix(ComplexMatrix::identity(d) * cplx(1.0 / static_cast<double>(d)));
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  cplx operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

 private:
  std::size_t num_qubits_ = 0;
  ComplexMatrix matrix_;
};

// ---------------------------------------------------------------------------
// Bipartite operations

/// Splits a register into the first `first_group` qubits and the rest.
struct Bipartition {
  std::size_t first_group = 1;
};

/// Transposes the indices of the second group of a 2^n x 2^n operator.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, Bipartition cut) {
  detail::require(rho.is_square(), "partial_transpose: matrix is not square");
  const std::size_t n = qubits_for_dimension(rho.rows());
  detail::require(cut.first_group >= 1 && cut.first_group < n,
                  "partial_transpose: cut must leave both groups nonempty");
  const std::size_t db = std::size_t{1} << (n - cut.first_group);
  const std::size_t da = rho.rows() / db;
  ComplexMatrix out(rho.rows(), rho.cols());
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b2 = 0; b2 < db; ++b2)
          out(a * db + b, a2 * db + b2) = rho(a * db + b2, a2 * db + b);
  return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, Bipartition cut) {
  return partial_transpose(rho.matrix(), cut);
}

/// Traces out every qubit not in `keep`. Kept qubits retain register order.
/// Works on unnormalized operators; the trace is preserved.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::vector<std::size_t> keep) {
  detail::require(rho.is_square(), "partial_trace: matrix is not square");
  const std::size_t n = qubits_for_dimension(rho.rows());
  detail::require(!keep.empty(), "partial_trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  detail::require(std::adjacent_find(keep.begin(), keep.end()) == keep.end(),
                  "partial_trace: duplicate qubit in keep set");
  detail::require(keep.back() < n, "partial_trace: qubit index out of range");

  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < n; ++q)
    if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);

  auto scatter = [n](const std::vector<std::size_t>& positions) {
    std::vector<std::size_t> table(std::size_t{1} << positions.size(), 0);
    for (std::size_t v = 0; v < table.size(); ++v) {
      std::size_t full = 0;
      for (std::size_t k = 0; k < positions.size(); ++k) {
        const std::size_t bit = (v >> (positions.size() - 1 - k)) & 1U;
        full |= bit << (n - 1 - positions[k]);
      }
      table[v] = full;
    }
    return table;
  };
  const auto kept_bits = scatter(keep);
  const auto traced_bits = scatter(traced);

  ComplexMatrix out(kept_bits.size(), kept_bits.size());
  for (std::size_t r = 0; r < kept_bits.size(); ++r)
    for (std::size_t c = 0; c < kept_bits.size(); ++c) {
      cplx s{0.0, 0.0};
      for (std::size_t t : traced_bits) s += rho(kept_bits[r] | t, kept_bits[c] | t);
      out(r, c) = s;
    }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  return DensityMatrix(partial_trace(rho.matrix(), std::move(keep)));
}

/// Negativity: -2 times the sum of the negative eigenvalues of the partial
/// transpose. Zero when there are none.
inline double negativity(const DensityMatrix& rho, Bipartition cut) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(partial_transpose(rho, cut)))
    if (lambda < 0.0) s += lambda;
  return -2.0 * s;
}

/// <psi|rho|psi>
inline double fidelity_pure(const DensityMatrix& rho, const StateVector& psi) {
  detail::require(rho.dim() == psi.dim(), "fidelity_pure: dimension mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t r = 0; r < psi.dim(); ++r) {
    cplx row{0.0, 0.0};
    for (std::size_t c = 0; c < psi.dim(); ++c) row += rho(r, c) * psi[c];
    s += std::conj(psi[r]) * row;
  }
  return s.real();
}

/// Half the trace norm of the difference.
inline double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(a - b)) s += std::abs(lambda);
  return 0.5 * s;
}

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

// ---------------------------------------------------------------------------
// Operator-Schmidt analysis of two-qubit operators

/// R[(i,k),(j,l)] = M[(i,j),(k,l)] for a 4x4 operator on two qubits.
inline ComplexMatrix realign(const ComplexMatrix& m) {
  detail::require(m.rows() == 4 && m.cols() == 4, "realign: expected a 4x4 matrix");
  ComplexMatrix r(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = m(2 * i + j, 2 * k + l);
  return r;
}

namespace detail {

// [[0, R], [R^dagger, 0]] has eigenvalues +-sigma_k. Small singular values
// come out with absolute accuracy ~eps*|R| instead of sqrt(eps*|R|^2).
inline ComplexMatrix hermitian_dilation(const ComplexMatrix& r) {
  const std::size_t n = r.rows();
  ComplexMatrix h(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      h(i, n + j) = r(i, j);
      h(n + j, i) = std::conj(r(i, j));
    }
  return h;
}

}  // namespace detail

/// Singular values (descending) of the realigned 4x4 operator.
inline std::array<double, 4> realignment_singular_values(const ComplexMatrix& m) {
  const auto ev = hermitian_eigenvalues(detail::hermitian_dilation(realign(m)));
  std::array<double, 4> s{};
  for (std::size_t k = 0; k < 4; ++k) s[k] = std::abs(ev[ev.size() - 1 - k]);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

/// Closest product approximation sigma_1 * A (x) B of a two-qubit operator.
struct ProductFactors {
  ComplexMatrix a;  // scaled so that |A|_F = sqrt(2), largest entry real > 0
  ComplexMatrix b;
  std::array<double, 4> singular_values{};
  double residual = 0.0;  // |M - A (x) B|_F
};

inline ProductFactors leading_product_factors(const ComplexMatrix& m) {
  const ComplexMatrix r = realign(m);
  const auto eig = hermitian_eigen(detail::hermitian_dilation(r));
  const std::size_t top = eig.values.size() - 1;
  const double sigma = eig.values[top];

  ProductFactors out;
  out.singular_values = realignment_singular_values(m);
  // Eigenvector (u; v)/sqrt(2) with R v = sigma u.
  std::array<cplx, 4> u{};
  std::array<cplx, 4> v{};
  for (std::size_t k = 0; k < 4; ++k) {
    u[k] = eig.vectors(k, top) * std::sqrt(2.0);
    v[k] = eig.vectors(4 + k, top) * std::sqrt(2.0);
  }
  // R = sigma u v^dagger, and R[(i,k),(j,l)] = A[i,k] B[j,l].
  ComplexMatrix a(2, 2);
  ComplexMatrix b(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      a(i, k) = u[2 * i + k] * std::sqrt(2.0);
      b(i, k) = std::conj(v[2 * i + k]) * (sigma / std::sqrt(2.0));
    }
  std::size_t best = 0;
  for (std::size_t k = 1; k < 4; ++k)
    if (std::abs(a.entries()[k]) > std::abs(a.entries()[best]) + 1e-14) best = k;
  const cplx pivot = a.entries()[best];
  if (std::abs(pivot) > 0.0) {
    const cplx phase = pivot / std::abs(pivot);
    a *= std::conj(phase);
    b *= phase;
  }
  out.residual = (m - kron(a, b)).frobenius_norm();
  out.a = std::move(a);
  out.b = std::move(b);
  return out;
}

}  // namespace qtele

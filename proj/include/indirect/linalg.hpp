// Copyright 2026 The indirect Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "indirect/errors.hpp"

namespace indirect {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;

/// Default relative rank/residual tolerance.
inline constexpr double kDefaultTol = 1e-9;

/// Dimensions of the target system S and the auxiliary system A. The joint
/// space is ordered S (slow index) then A.
class BipartiteDims {
 public:
  BipartiteDims(Eigen::Index n_s, Eigen::Index n_a) : n_s_(n_s), n_a_(n_a) {
    if (n_s < 2 || n_a < 2) {
      throw ValidationError("BipartiteDims: both factors need dimension >= 2, got n_s=" +
                            std::to_string(n_s) + ", n_a=" + std::to_string(n_a));
    }
  }

  Eigen::Index n_s() const { return n_s_; }
  Eigen::Index n_a() const { return n_a_; }
  Eigen::Index n() const { return n_s_ * n_a_; }
  /// dim su(n_s)
  Eigen::Index d_s() const { return n_s_ * n_s_ - 1; }
  /// dim su(n_a)
  Eigen::Index d_a() const { return n_a_ * n_a_ - 1; }

  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

 private:
  Eigen::Index n_s_;
  Eigen::Index n_a_;
};

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw DimensionMismatch(std::string(what) + ": expected a non-empty square matrix, got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

template <typename DA, typename DB>
void require_same_shape(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                        const char* what) {
  require_square(a, what);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": operand sizes differ (" +
                            std::to_string(a.rows()) + " vs " + std::to_string(b.rows()) + ")");
  }
}

/// max(1, ||a||_HS): the scale relative tolerances are measured against.
template <typename Derived>
typename Derived::RealScalar tol_scale(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  return std::max(Real(1), a.norm());
}

/// Views an n x n complex matrix as a real vector of length 2n^2. The real
/// dot product of two such views is Re trace(a^dagger b).
template <typename Real>
Eigen::Map<const RVector<Real>> real_view(const CMatrix<Real>& m) {
  return Eigen::Map<const RVector<Real>>(reinterpret_cast<const Real*>(m.data()), 2 * m.size());
}

template <typename Real>
CMatrix<Real> from_real_vector(const RVector<Real>& v, Eigen::Index n) {
  return Eigen::Map<const CMatrix<Real>>(reinterpret_cast<const std::complex<Real>*>(v.data()), n,
                                         n);
}

struct NoProjection {
  template <typename M>
  void operator()(M&) const {}
};

/// Skew-Hermitian part, optionally with the trace removed. Both discarded
/// parts are HS-orthogonal to every traceless skew-Hermitian matrix.
struct SkewProjection {
  bool traceless = false;

  template <typename M>
  void operator()(M& m) const {
    m = (m - m.adjoint()).eval() / typename M::RealScalar(2);
    if (traceless) {
      const auto shift = m.trace() / typename M::RealScalar(m.rows());
      m.diagonal().array() -= shift;
    }
  }
};

/// Projects `candidate` off the orthonormal `basis` (two passes of modified
/// Gram-Schmidt, real coefficients), applies `project` to the residual and
/// appends it normalized when it is larger than tol * max(1, ||candidate||).
/// Returns whether it grew.
template <typename Real>
void project_off(const std::vector<CMatrix<Real>>& basis, CMatrix<Real>& candidate) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& e : basis) {
      const Real c = real_view(e).dot(real_view(candidate));
      candidate -= c * e;
    }
  }
}

template <typename Real, typename Projection = NoProjection>
bool absorb(std::vector<CMatrix<Real>>& basis, CMatrix<Real> candidate, Real tol,
            const Projection& project = {}) {
  const Real threshold = tol * tol_scale(candidate);
  project_off(basis, candidate);
  project(candidate);
  const Real residual = candidate.norm();
  if (residual <= threshold) {
    return false;
  }
  candidate /= residual;
  basis.push_back(std::move(candidate));
  return true;
}

}  // namespace detail

template <typename Real = double>
CMatrix<Real> identity(Eigen::Index n) {
  return CMatrix<Real>::Identity(n, n);
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  typename Derived::RealScalar tol = kDefaultTol) {
  detail::require_square(m, "is_hermitian");
  return (m - m.adjoint()).norm() <= tol * detail::tol_scale(m);
}

template <typename Derived>
bool is_skew_hermitian(const Eigen::MatrixBase<Derived>& m,
                       typename Derived::RealScalar tol = kDefaultTol) {
  detail::require_square(m, "is_skew_hermitian");
  return (m + m.adjoint()).norm() <= tol * detail::tol_scale(m);
}

template <typename Derived>
bool is_traceless(const Eigen::MatrixBase<Derived>& m,
                  typename Derived::RealScalar tol = kDefaultTol) {
  detail::require_square(m, "is_traceless");
  return std::abs(m.trace()) <= tol * detail::tol_scale(m);
}

/// Positive semidefinite test on the Hermitian part: every eigenvalue >= -tol.
template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar tol = kDefaultTol) {
  detail::require_square(m, "is_psd");
  using Plain = typename Derived::PlainObject;
  const Plain herm = (m + m.adjoint()) / 2;
  Eigen::SelfAdjointEigenSolver<Plain> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

template <typename DA, typename DB>
typename DA::PlainObject commutator(const Eigen::MatrixBase<DA>& a,
                                    const Eigen::MatrixBase<DB>& b) {
  detail::require_same_shape(a, b, "commutator");
  return a * b - b * a;
}

template <typename DA, typename DB>
typename DA::PlainObject anticommutator(const Eigen::MatrixBase<DA>& a,
                                        const Eigen::MatrixBase<DB>& b) {
  detail::require_same_shape(a, b, "anticommutator");
  return a * b + b * a;
}

/// Hilbert-Schmidt inner product trace(a^dagger b).
template <typename DA, typename DB>
typename DA::Scalar hs_inner(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  detail::require_same_shape(a, b, "hs_inner");
  return a.conjugate().cwiseProduct(b).sum();
}

/// Re trace(a^dagger b): the inner product of the real vector space in which
/// all Lie-algebra spans live.
template <typename DA, typename DB>
typename DA::RealScalar hs_real(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return std::real(hs_inner(a, b));
}

/// Kronecker product a (x) b, a being the slow (S) factor.
template <typename DA, typename DB>
typename DA::PlainObject kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Plain = typename DA::PlainObject;
  const Plain lhs = a;
  const Plain rhs = b;
  return Eigen::kroneckerProduct(lhs, rhs).eval();
}

/// Tr_A: contracts the auxiliary (right, fast) index.
template <typename Derived>
typename Derived::PlainObject partial_trace_a(const Eigen::MatrixBase<Derived>& rho,
                                              const BipartiteDims& dims) {
  detail::require_square(rho, "partial_trace_a");
  if (rho.rows() != dims.n()) {
    throw DimensionMismatch("partial_trace_a: matrix is " + std::to_string(rho.rows()) +
                            "-dimensional, dims give n = " + std::to_string(dims.n()));
  }
  const Eigen::Index ns = dims.n_s();
  const Eigen::Index na = dims.n_a();
  typename Derived::PlainObject out(ns, ns);
  for (Eigen::Index i = 0; i < ns; ++i) {
    for (Eigen::Index j = 0; j < ns; ++j) {
      out(i, j) = rho.block(i * na, j * na, na, na).trace();
    }
  }
  return out;
}

/// Tr_S: contracts the target (left, slow) index.
template <typename Derived>
typename Derived::PlainObject partial_trace_s(const Eigen::MatrixBase<Derived>& rho,
                                              const BipartiteDims& dims) {
  detail::require_square(rho, "partial_trace_s");
  if (rho.rows() != dims.n()) {
    throw DimensionMismatch("partial_trace_s: matrix is " + std::to_string(rho.rows()) +
                            "-dimensional, dims give n = " + std::to_string(dims.n()));
  }
  const Eigen::Index ns = dims.n_s();
  const Eigen::Index na = dims.n_a();
  typename Derived::PlainObject out = Derived::PlainObject::Zero(na, na);
  for (Eigen::Index i = 0; i < ns; ++i) {
    out += rho.block(i * na, i * na, na, na);
  }
  return out;
}

/// Extends the orthonormal set `against` to an orthonormal basis of
/// span(against + candidates) over the reals and returns only the new
/// vectors. Candidates whose residual is <= tol * max(1, ||candidate||) are
/// dropped.
template <typename Real>
std::vector<CMatrix<Real>> orthonormalize(const std::vector<CMatrix<Real>>& candidates,
                                          const std::vector<CMatrix<Real>>& against,
                                          Real tol = kDefaultTol) {
  std::vector<CMatrix<Real>> basis = against;
  for (const auto& c : candidates) {
    if (!basis.empty()) {
      detail::require_same_shape(c, basis.front(), "orthonormalize");
    }
    detail::absorb(basis, c, tol);
  }
  return {std::make_move_iterator(basis.begin() + static_cast<std::ptrdiff_t>(against.size())),
          std::make_move_iterator(basis.end())};
}

/// Dimension of the real span of `elements`: singular values of the stacked
/// real views above tol * max(1, largest singular value).
template <typename Real>
std::size_t real_rank(const std::vector<CMatrix<Real>>& elements, Real tol = kDefaultTol) {
  if (elements.empty()) {
    return 0;
  }
  using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  const auto& first = elements.front();
  RMatrix stacked(2 * first.size(), static_cast<Eigen::Index>(elements.size()));
  for (std::size_t k = 0; k < elements.size(); ++k) {
    detail::require_same_shape(elements[k], first, "real_rank");
    stacked.col(static_cast<Eigen::Index>(k)) = detail::real_view(elements[k]);
  }
  const Eigen::JacobiSVD<RMatrix> svd(stacked);
  const auto& sv = svd.singularValues();
  const Real threshold = tol * std::max(Real(1), sv(0));
  return static_cast<std::size_t>((sv.array() > threshold).count());
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
template <typename Real>
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(CMatrix<Real> m, Real tol = kDefaultTol) {
    detail::require_square(m, "DensityMatrix");
    if (!is_hermitian(m, tol)) {
      throw ValidationError("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(m.trace() - std::complex<Real>(1)) > tol * m.rows()) {
      throw ValidationError("DensityMatrix: trace is not 1");
    }
    if (!is_psd(m, tol)) {
      throw ValidationError("DensityMatrix: matrix has a negative eigenvalue");
    }
    return DensityMatrix(std::move(m));
  }

  /// 1/n times the identity.
  static DensityMatrix maximally_mixed(Eigen::Index n) {
    return DensityMatrix(identity<Real>(n) / Real(n));
  }

  const CMatrix<Real>& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

  bool is_maximally_mixed(Real tol = kDefaultTol) const {
    return (mat_ - identity<Real>(dim()) / Real(dim())).norm() <= tol;
  }

 private:
  explicit DensityMatrix(CMatrix<Real> m) : mat_(std::move(m)) {}

  CMatrix<Real> mat_;
};

}  // namespace indirect

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

#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "indirect/linalg.hpp"

namespace indirect {

/// Real subspace of u(n) given by an HS-orthonormal basis. Elements are
/// skew-Hermitian but need not be traceless.
template <typename Real = double>
struct Subspace {
  Eigen::Index ambient = 0;
  std::vector<CMatrix<Real>> elements;

  std::size_t dim() const { return elements.size(); }
};

/// HS-orthonormal basis of a real Lie subalgebra of su(n).
template <typename Real = double>
struct LieBasis {
  Eigen::Index ambient = 0;
  std::optional<BipartiteDims> dims;
  std::vector<CMatrix<Real>> elements;
  bool closed = false;
  /// Largest bracket nesting depth needed to produce an element.
  int depth_reached = 0;
  Real tol = Real(kDefaultTol);

  std::size_t dim() const { return elements.size(); }
};

template <typename S>
concept OrthonormalSpan = requires(const S& s) {
  { s.ambient } -> std::convertible_to<Eigen::Index>;
  s.elements.size();
};

/// True iff x lies in the span, i.e. its residual after orthogonal projection
/// has norm <= tol * max(1, ||x||).
template <OrthonormalSpan Space, typename Derived>
bool contains(const Space& space, const Eigen::MatrixBase<Derived>& x,
              typename Derived::RealScalar tol = kDefaultTol) {
  using Real = typename Derived::RealScalar;
  detail::require_square(x, "contains");
  if (x.rows() != space.ambient) {
    throw DimensionMismatch("contains: element is " + std::to_string(x.rows()) +
                            "-dimensional, space lives in dimension " +
                            std::to_string(space.ambient));
  }
  CMatrix<Real> r = x;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& e : space.elements) {
      r -= detail::real_view(e).dot(detail::real_view(r)) * e;
    }
  }
  return r.norm() <= tol * detail::tol_scale(x);
}

namespace detail {

/// Grows `space` (orthonormal) under commutation with `algebra` until no
/// residual survives or the dimension reaches `cap`. Works level by level: the
/// brackets of the newest elements are projected off `space` together and the
/// new directions are read from their SVD, which keeps rounding errors from
/// compounding along long bracket chains.
template <typename Real>
void saturate_in_place(std::vector<CMatrix<Real>>& space,
                       const std::vector<CMatrix<Real>>& algebra, Real tol, std::size_t cap) {
  using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  if (space.empty() || algebra.empty()) {
    return;
  }
  const Eigen::Index n = space.front().rows();
  std::vector<CMatrix<Real>> frontier = space;
  while (!frontier.empty() && space.size() < cap) {
    RMatrix residuals(2 * n * n, static_cast<Eigen::Index>(frontier.size() * algebra.size()));
    Real scale = 1;
    Eigen::Index col = 0;
    for (const auto& v : frontier) {
      for (const auto& a : algebra) {
        CMatrix<Real> c = commutator(a, v);
        scale = std::max(scale, c.norm());
        project_off(space, c);
        SkewProjection{}(c);
        residuals.col(col++) = real_view(c);
      }
    }
    Eigen::JacobiSVD<RMatrix> svd(residuals, Eigen::ComputeThinU);
    frontier.clear();
    for (Eigen::Index k = 0; k < svd.singularValues().size() && space.size() < cap; ++k) {
      if (svd.singularValues()(k) <= tol * scale) {
        break;
      }
      const RVector<Real> direction = svd.matrixU().col(k);
      if (absorb(space, from_real_vector<Real>(direction, n), tol, SkewProjection{})) {
        frontier.push_back(space.back());
      }
    }
  }
}

template <typename Real>
std::size_t su_dim(Eigen::Index n) {
  return static_cast<std::size_t>(n * n - 1);
}

}  // namespace detail

/// Smallest real Lie algebra containing the (traceless parts of the)
/// generators. Elements are produced breadth-first in insertion order: element
/// k is bracketed against every earlier element, so the output is
/// reproducible for fixed input. Throws ClosureCapExceeded when the algebra
/// would grow past max_dim (default n^2 - 1).
template <typename Real>
LieBasis<Real> lie_closure(const std::vector<CMatrix<Real>>& generators, Real tol = kDefaultTol,
                           std::optional<std::size_t> max_dim = std::nullopt) {
  if (generators.empty()) {
    throw ValidationError("lie_closure: no generators");
  }
  const Eigen::Index n = generators.front().rows();
  const std::size_t full = detail::su_dim<Real>(n);
  const std::size_t cap = std::min(max_dim.value_or(full), full);

  LieBasis<Real> out;
  out.ambient = n;
  out.tol = tol;
  std::vector<int> depth;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto& gen = generators[g];
    detail::require_same_shape(gen, generators.front(), "lie_closure");
    if (!is_skew_hermitian(gen, tol)) {
      throw ValidationError("lie_closure: generator " + std::to_string(g) +
                            " is not skew-Hermitian");
    }
    const CMatrix<Real> traceless = gen - (gen.trace() / Real(n)) * identity<Real>(n);
    if (detail::absorb(out.elements, traceless, tol, detail::SkewProjection{true})) {
      depth.push_back(0);
    }
  }
  if (out.elements.size() > cap) {
    throw ClosureCapExceeded("lie_closure: generators already span " +
                             std::to_string(out.elements.size()) + " > max_dim " +
                             std::to_string(cap) + " dimensions");
  }

  for (std::size_t next = 0; next < out.elements.size() && out.elements.size() < full; ++next) {
    const CMatrix<Real> x = out.elements[next];
    for (std::size_t j = 0; j < next; ++j) {
      if (detail::absorb(out.elements, commutator(out.elements[j], x), tol,
                         detail::SkewProjection{true})) {
        depth.push_back(std::max(depth[j], depth[next]) + 1);
        if (out.elements.size() > cap) {
          throw ClosureCapExceeded("lie_closure: algebra exceeds max_dim " + std::to_string(cap) +
                                   " at bracket depth " + std::to_string(depth.back()));
        }
        if (out.elements.size() == full) {
          break;
        }
      }
    }
  }
  out.closed = true;
  out.depth_reached = depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end());
  return out;
}

template <typename Real>
LieBasis<Real> lie_closure(const std::vector<CMatrix<Real>>& generators, const BipartiteDims& dims,
                           Real tol = kDefaultTol,
                           std::optional<std::size_t> max_dim = std::nullopt) {
  if (!generators.empty() && generators.front().rows() != dims.n()) {
    throw DimensionMismatch("lie_closure: generators do not act on the joint space");
  }
  LieBasis<Real> out = lie_closure(generators, tol, max_dim);
  out.dims = dims;
  return out;
}

/// Orthonormal basis of u ∩ w. Principal-angle cosines are the singular
/// values of the cross-Gram matrix; a direction is kept when its cosine is
/// >= 1 - tol.
template <typename Real>
Subspace<Real> subspace_intersect(const Subspace<Real>& u, const Subspace<Real>& w,
                                  Real tol = kDefaultTol) {
  if (u.ambient != w.ambient) {
    throw DimensionMismatch("subspace_intersect: ambient dimensions " +
                            std::to_string(u.ambient) + " and " + std::to_string(w.ambient));
  }
  Subspace<Real> out{u.ambient, {}};
  if (u.elements.empty() || w.elements.empty()) {
    return out;
  }
  using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index len = 2 * u.ambient * u.ambient;
  RMatrix ur(len, static_cast<Eigen::Index>(u.dim()));
  RMatrix wr(len, static_cast<Eigen::Index>(w.dim()));
  for (std::size_t k = 0; k < u.dim(); ++k) {
    ur.col(static_cast<Eigen::Index>(k)) = detail::real_view(u.elements[k]);
  }
  for (std::size_t k = 0; k < w.dim(); ++k) {
    wr.col(static_cast<Eigen::Index>(k)) = detail::real_view(w.elements[k]);
  }
  const RMatrix cross = ur.transpose() * wr;
  Eigen::JacobiSVD<RMatrix> svd(cross, Eigen::ComputeThinU);
  std::vector<CMatrix<Real>> directions;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) >= Real(1) - tol) {
      const RVector<Real> v = ur * svd.matrixU().col(k);
      directions.push_back(detail::from_real_vector<Real>(v, u.ambient));
    }
  }
  out.elements = orthonormalize<Real>(directions, {}, tol);
  return out;
}

/// Sum over k of ad_algebra^k span{seed}: the smallest ad-invariant subspace
/// containing the seed.
template <typename Real>
Subspace<Real> ad_saturate(const CMatrix<Real>& seed, const LieBasis<Real>& algebra,
                           Real tol = kDefaultTol) {
  detail::require_square(seed, "ad_saturate");
  if (seed.rows() != algebra.ambient) {
    throw DimensionMismatch("ad_saturate: seed dimension differs from the algebra's");
  }
  if (!algebra.closed) {
    throw ValidationError("ad_saturate: algebra basis is not closed");
  }
  if (!is_skew_hermitian(seed, tol)) {
    throw ValidationError("ad_saturate: seed is not skew-Hermitian");
  }
  Subspace<Real> out{seed.rows(), {}};
  if (!detail::absorb(out.elements, seed, tol)) {
    throw ValidationError("ad_saturate: zero seed");
  }
  const auto cap = static_cast<std::size_t>(seed.rows() * seed.rows());
  detail::saturate_in_place(out.elements, algebra.elements, tol, cap);
  return out;
}

/// V = sum over k of ad_L^k span{i rho_s (x) rho_a}. The identity component
/// of the seed is kept, so V is a subspace of u(n), not su(n).
template <typename Real>
Subspace<Real> observability_space(const DensityMatrix<Real>& rho_s,
                                   const DensityMatrix<Real>& rho_a, const LieBasis<Real>& algebra,
                                   const BipartiteDims& dims, Real tol = kDefaultTol) {
  if (rho_s.dim() != dims.n_s() || rho_a.dim() != dims.n_a()) {
    throw DimensionMismatch("observability_space: state dimensions do not match dims");
  }
  if (algebra.ambient != dims.n()) {
    throw DimensionMismatch("observability_space: algebra does not act on the joint space");
  }
  if (!algebra.closed) {
    throw ValidationError("observability_space: algebra basis is not closed");
  }
  const CMatrix<Real> seed =
      std::complex<Real>(0, 1) * kron(rho_s.matrix(), rho_a.matrix());
  Subspace<Real> out{dims.n(), {}};
  detail::absorb(out.elements, seed, tol);
  const auto cap = static_cast<std::size_t>(dims.n() * dims.n());
  detail::saturate_in_place(out.elements, algebra.elements, tol, cap);
  return out;
}

}  // namespace indirect

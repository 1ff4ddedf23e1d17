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
#include <random>

#include "indirect/linalg.hpp"

// Seeded random draws used for generic states and property tests.

namespace indirect {

template <typename Real, typename Rng>
CMatrix<Real> random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<Real> normal(0, 1);
  CMatrix<Real> m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      m(i, j) = {re, im};
    }
  }
  return m;
}

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
template <typename Real, typename Rng>
CMatrix<Real> random_unitary(Eigen::Index n, Rng& rng) {
  const CMatrix<Real> g = random_gaussian<Real>(n, n, rng);
  Eigen::HouseholderQR<CMatrix<Real>> qr(g);
  CMatrix<Real> q = qr.householderQ();
  const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto d = r(k, k);
    if (std::abs(d) > 0) {
      q.col(k) *= d / std::abs(d);
    }
  }
  return q;
}

/// Random element of su(n) with Gaussian coordinates.
template <typename Real, typename Rng>
CMatrix<Real> random_su(Eigen::Index n, Rng& rng) {
  const CMatrix<Real> g = random_gaussian<Real>(n, n, rng);
  CMatrix<Real> x = (g - g.adjoint()) / Real(2);
  x -= (x.trace() / Real(n)) * identity<Real>(n);
  return x;
}

/// Full-rank density matrix with a non-degenerate spectrum (adjacent
/// eigenvalues differ by at least min_gap) in a Haar-random eigenbasis.
template <typename Real, typename Rng>
DensityMatrix<Real> random_density(Eigen::Index n, Rng& rng, Real min_gap = Real(1e-3)) {
  std::uniform_real_distribution<Real> uniform(Real(0.05), Real(1));
  RVector<Real> p(n);
  for (;;) {
    for (Eigen::Index k = 0; k < n; ++k) {
      p(k) = uniform(rng);
    }
    p /= p.sum();
    RVector<Real> sorted = p;
    std::sort(sorted.data(), sorted.data() + n);
    bool distinct = true;
    for (Eigen::Index k = 1; k < n; ++k) {
      distinct = distinct && (sorted(k) - sorted(k - 1) >= min_gap);
    }
    if (distinct) {
      break;
    }
  }
  const CMatrix<Real> u = random_unitary<Real>(n, rng);
  CMatrix<Real> rho = u * p.template cast<std::complex<Real>>().asDiagonal() * u.adjoint();
  rho = (rho + rho.adjoint()) / Real(2);
  return DensityMatrix<Real>::from_matrix(std::move(rho));
}

}  // namespace indirect

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

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "indirect/linalg.hpp"

namespace indirect {

/// i times the generalized Gell-Mann matrices: an HS-orthogonal basis of
/// su(n), each element of HS norm sqrt(2).
///
/// Order: for every pair j < k (lexicographic) the symmetric element
/// i(|j><k| + |k><j|) then the antisymmetric element (|j><k| - |k><j|);
/// afterwards the diagonal elements l = 1..n-1,
/// i sqrt(2/(l(l+1))) diag(1, ..., 1, -l, 0, ..., 0) with l leading ones.
/// For n = 2 this is {i sigma_x, i sigma_y, i sigma_z}.
template <typename Real = double>
std::vector<CMatrix<Real>> gell_mann_basis(Eigen::Index n) {
  if (n < 2) {
    throw ValidationError("gell_mann_basis: n must be >= 2");
  }
  using C = std::complex<Real>;
  const C i(0, 1);
  std::vector<CMatrix<Real>> out;
  out.reserve(static_cast<std::size_t>(n * n - 1));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      CMatrix<Real> sym = CMatrix<Real>::Zero(n, n);
      sym(j, k) = i;
      sym(k, j) = i;
      out.push_back(std::move(sym));
      CMatrix<Real> anti = CMatrix<Real>::Zero(n, n);
      anti(j, k) = C(1);
      anti(k, j) = C(-1);
      out.push_back(std::move(anti));
    }
  }
  for (Eigen::Index l = 1; l < n; ++l) {
    const Real norm = std::sqrt(Real(2) / Real(l * (l + 1)));
    CMatrix<Real> d = CMatrix<Real>::Zero(n, n);
    for (Eigen::Index m = 0; m < l; ++m) {
      d(m, m) = i * norm;
    }
    d(l, l) = -i * norm * Real(l);
    out.push_back(std::move(d));
  }
  return out;
}

enum class PauliAxis { X, Y, Z };

/// Hermitian is the textbook convention (sigma_z = diag(1, -1)).
/// SkewHermitian absorbs a factor i (sigma_z = diag(i, -i)), which is the
/// form in which the matrices are elements of su(2).
enum class PauliConvention { Hermitian, SkewHermitian };

template <typename Real = double>
CMatrix<Real> pauli(PauliAxis axis, PauliConvention convention = PauliConvention::Hermitian) {
  using C = std::complex<Real>;
  CMatrix<Real> m(2, 2);
  switch (axis) {
    case PauliAxis::X:
      m << C(0), C(1), C(1), C(0);
      break;
    case PauliAxis::Y:
      m << C(0), C(0, -1), C(0, 1), C(0);
      break;
    case PauliAxis::Z:
      m << C(1), C(0), C(0), C(-1);
      break;
  }
  if (convention == PauliConvention::SkewHermitian) {
    m *= C(0, 1);
  }
  return m;
}

/// Axis given as 'x', 'y' or 'z' (either case).
template <typename Real = double>
CMatrix<Real> pauli(char axis, PauliConvention convention = PauliConvention::Hermitian) {
  switch (axis) {
    case 'x':
    case 'X':
      return pauli<Real>(PauliAxis::X, convention);
    case 'y':
    case 'Y':
      return pauli<Real>(PauliAxis::Y, convention);
    case 'z':
    case 'Z':
      return pauli<Real>(PauliAxis::Z, convention);
    default:
      throw ValidationError(std::string("pauli: invalid axis '") + axis + "'");
  }
}

}  // namespace indirect

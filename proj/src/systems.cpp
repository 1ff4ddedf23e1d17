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

#include "indirect/systems.hpp"

#include <cmath>

namespace indirect {

namespace {

using C = std::complex<double>;

ComplexMatrix skew_pauli(char axis) { return pauli(axis, PauliConvention::SkewHermitian); }

ComplexMatrix zero(Eigen::Index n) { return ComplexMatrix::Zero(n, n); }

constexpr const char* kOracle = "tests/oracles/closure_oracle.py";

}  // namespace

ModelSpec example_two_qubit_case1() {
  const BipartiteDims dims(2, 2);
  ComplexMatrix drift = (skew_pauli('x') + skew_pauli('z')) / std::sqrt(2.0);
  IndirectProblem problem(dims, drift, zero(2), {{skew_pauli('z'), skew_pauli('z')}},
                          gell_mann_basis(2));
  return {"two_qubit_case1", dims, problem,
          {15, CaseLabel::FullLocal, true,
           std::string(kOracle) + " ('two-qubit i(x+z)/sqrt2 drift + zz: 15')"}};
}

ModelSpec example_two_qubit_intermediate() {
  const BipartiteDims dims(2, 2);
  IndirectProblem problem(dims, skew_pauli('x'), zero(2), {{skew_pauli('z'), skew_pauli('z')}},
                          gell_mann_basis(2));
  // X (x) 1, {Y, Z} (x) su(2), 1 (x) su(2)
  return {"two_qubit_intermediate", dims, problem,
          {10, CaseLabel::Intermediate, false,
           std::string(kOracle) + " ('two-qubit ix drift + zz: 10')"}};
}

ModelSpec example_no_drift_case_degenerate() {
  const BipartiteDims dims(2, 2);
  IndirectProblem problem(dims, zero(2), zero(2), {{skew_pauli('z'), skew_pauli('z')}},
                          gell_mann_basis(2));
  // Z (x) su(2) and 1 (x) su(2)
  return {"no_drift_degenerate", dims, problem,
          {6, CaseLabel::NoLocal, false, std::string(kOracle) + " ('two-qubit no drift zz: 6')"}};
}

ModelSpec example_subalgebra_sp() {
  const BipartiteDims dims(2, 2);
  // K (x) 1 satisfies the constraint for any K in su(2); i S (x) sigma needs
  // a symmetric sigma; 1 (x) b needs an antisymmetric b.
  ComplexMatrix drift = skew_pauli('x') + 0.5 * skew_pauli('z');
  IndirectProblem problem(dims, drift, zero(2),
                          {{skew_pauli('z'), skew_pauli('x')}, {skew_pauli('x'), skew_pauli('z')}},
                          {skew_pauli('y')});
  return {"subalgebra_sp", dims, problem,
          {10, std::nullopt, false, std::string(kOracle) + " ('sp: closure: 10')"}};
}

ModelSpec example_odd_na() {
  const BipartiteDims dims(2, 3);
  const auto gm3 = gell_mann_basis(3);
  IndirectProblem problem(dims, zero(2), zero(3),
                          {{skew_pauli('x'), gm3[0]}, {skew_pauli('y'), gm3[3]}}, gm3);
  return {"odd_na", dims, problem,
          {35, CaseLabel::FullLocal, true, std::string(kOracle) + " ('odd na: xy couplings: 35')"}};
}

std::vector<ModelSpec> all_examples() {
  return {example_two_qubit_case1(), example_two_qubit_intermediate(),
          example_no_drift_case_degenerate(), example_subalgebra_sp(), example_odd_na()};
}

ModelSpec example_by_name(const std::string& name) {
  for (auto& spec : all_examples()) {
    if (spec.name == name) {
      return spec;
    }
  }
  throw ValidationError("unknown example model '" + name + "'");
}

ComplexMatrix symplectic_form(Eigen::Index half) {
  ComplexMatrix omega = ComplexMatrix::Zero(2 * half, 2 * half);
  omega.topRightCorner(half, half) = ComplexMatrix::Identity(half, half);
  omega.bottomLeftCorner(half, half) = -ComplexMatrix::Identity(half, half);
  return omega;
}

double symplectic_residual(const ComplexMatrix& a) {
  const ComplexMatrix omega = symplectic_form(a.rows() / 2);
  return (omega * a + a.transpose() * omega).norm();
}

std::vector<ComplexMatrix> symplectic_algebra_basis(Eigen::Index half, double tol) {
  const Eigen::Index n = 2 * half;
  std::vector<ComplexMatrix> u_basis = gell_mann_basis(n);
  u_basis.push_back(C(0, 1) * identity(n));
  const ComplexMatrix omega = symplectic_form(half);
  const Eigen::Index block = 2 * n * n;
  Eigen::MatrixXd constraint(block, static_cast<Eigen::Index>(u_basis.size()));
  for (std::size_t k = 0; k < u_basis.size(); ++k) {
    const ComplexMatrix image = omega * u_basis[k] + u_basis[k].transpose() * omega;
    constraint.col(static_cast<Eigen::Index>(k)) = detail::real_view(image);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraint, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double threshold = tol * std::max(1.0, sv(0));
  std::vector<ComplexMatrix> kernel;
  for (Eigen::Index col = 0; col < svd.matrixV().cols(); ++col) {
    if (col < sv.size() && sv(col) > threshold) {
      continue;
    }
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < u_basis.size(); ++k) {
      a += svd.matrixV()(static_cast<Eigen::Index>(k), col) * u_basis[k];
    }
    kernel.push_back(std::move(a));
  }
  return orthonormalize<double>(kernel, {}, tol);
}

}  // namespace indirect

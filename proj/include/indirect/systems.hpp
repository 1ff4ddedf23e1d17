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

#include <optional>
#include <string>
#include <vector>

#include "indirect/bases.hpp"
#include "indirect/controllability.hpp"

namespace indirect {

/// Values a canned model is known to produce, with the procedure that
/// derived them.
struct ExpectedFragments {
  std::optional<std::size_t> algebra_dim;
  std::optional<CaseLabel> case_label;
  std::optional<bool> completely_controllable;
  std::string provenance;
};

struct ModelSpec {
  std::string name;
  BipartiteDims dims;
  IndirectProblem problem;
  ExpectedFragments expected;
};

/// Two qubits, drift i(sigma_x + sigma_z)/sqrt(2) on S, Ising coupling
/// (i sigma_z, i sigma_z), full control on A. Closes to su(4).
ModelSpec example_two_qubit_case1();

/// Two qubits, drift i sigma_x on S, Ising coupling, full control on A.
/// Closes to a 10-dimensional algebra with s = 1.
ModelSpec example_two_qubit_intermediate();

/// Two qubits, no drift, a single Ising coupling: every left factor is a
/// multiple of sigma_z, so no D (x) 1 direction appears.
ModelSpec example_no_drift_case_degenerate();

/// Two qubits whose generators satisfy Omega A + A^T Omega = 0 with
/// Omega = [[0, 1], [-1, 0]] (x) 1_2. Control on A is limited to i sigma_y.
ModelSpec example_subalgebra_sp();

/// Qubit S, qutrit A, full su(3) control, two couplings with non-commuting
/// left factors i sigma_x, i sigma_y.
ModelSpec example_odd_na();

std::vector<ModelSpec> all_examples();

/// Looks a canned model up by name; throws ValidationError if unknown.
ModelSpec example_by_name(const std::string& name);

/// [[0, 1_half], [-1_half, 0]]
ComplexMatrix symplectic_form(Eigen::Index half);

/// ||Omega a + a^T Omega||
double symplectic_residual(const ComplexMatrix& a);

/// Orthonormal basis of {A skew-Hermitian 2h x 2h : Omega A + A^T Omega = 0},
/// obtained as the null space of the constraint on u(2h).
std::vector<ComplexMatrix> symplectic_algebra_basis(Eigen::Index half, double tol = kDefaultTol);

}  // namespace indirect

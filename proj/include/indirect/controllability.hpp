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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "indirect/lie.hpp"
#include "indirect/linalg.hpp"

namespace indirect {

enum class CaseLabel {
  FullLocal,     // the D (x) 1 block spans su(n_S)
  NoLocal,       // no D (x) 1 elements
  Intermediate,  // 1 <= s < d_S
};

std::string_view to_string(CaseLabel label);

/// One interaction summand i * left (x) right, left in su(n_S), right in
/// su(n_A).
struct Coupling {
  ComplexMatrix left;
  ComplexMatrix right;
};

/// Indirect-control system: drift J = K (x) 1 + 1 (x) L + sum_j i S_j (x)
/// sigma_j together with local controls 1 (x) b on the auxiliary system.
/// Validated at construction.
class IndirectProblem {
 public:
  IndirectProblem(BipartiteDims dims, ComplexMatrix drift_s, ComplexMatrix drift_a,
                  std::vector<Coupling> couplings, std::vector<ComplexMatrix> control_algebra,
                  double tol = kDefaultTol);

  const BipartiteDims& dims() const { return dims_; }
  const ComplexMatrix& drift_s() const { return drift_s_; }
  const ComplexMatrix& drift_a() const { return drift_a_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }
  const std::vector<ComplexMatrix>& control_algebra() const { return control_algebra_; }

 private:
  BipartiteDims dims_;
  ComplexMatrix drift_s_;
  ComplexMatrix drift_a_;
  std::vector<Coupling> couplings_;
  std::vector<ComplexMatrix> control_algebra_;
};

/// The same problem seen through local unitaries T_S (x) T_A.
IndirectProblem locally_transformed(const IndirectProblem& p, const ComplexMatrix& t_s,
                                    const ComplexMatrix& t_a);

/// {J} followed by {1 (x) b : b in control_algebra}.
std::vector<ComplexMatrix> build_generators(const IndirectProblem& p);

bool is_completely_controllable(const LieBasis<double>& basis, const BipartiteDims& dims);

/// Linear dependence of x, y in su(n) decided through commutators: non-zero
/// [x, y] means independent; otherwise the pair is diagonalized jointly and
/// the eigenvalue vectors are compared pairwise (x_b y_a = x_a y_b).
bool lemma1_dependent(const ComplexMatrix& x, const ComplexMatrix& y, double tol = kDefaultTol);

struct WitnessSearch {
  /// A in su(n) with [[A, x], [A, y]] != 0, present iff the pair is
  /// independent.
  std::optional<ComplexMatrix> witness;
  /// n == 2: commuting elements of su(2) are always dependent, so no search
  /// is attempted.
  bool two_dimensional = false;
};

/// For a commuting pair, searches A_ab + A_ga and A_ab + A_gb (A_jk =
/// |j><k| - |k><j| in the joint eigenbasis) in lexicographic (a, b, g) order.
/// Throws ValidationError when x and y do not commute.
WitnessSearch lemma1_witness(const ComplexMatrix& x, const ComplexMatrix& y,
                             double tol = kDefaultTol);

struct CoupledBlock {
  /// Fixed su(n_A) basis element (Gell-Mann).
  ComplexMatrix right;
  /// Orthonormal S with i S (x) right in the algebra.
  std::vector<ComplexMatrix> left;
};

/// Tensor-product decomposition of an algebra that contains 1 (x) su(n_A):
///   {1 (x) sigma} + {i S (x) sigma_j} per Gell-Mann sigma_j + {D (x) 1}.
struct StructuredBasis {
  BipartiteDims dims;
  std::vector<ComplexMatrix> local_a;
  std::vector<CoupledBlock> coupled;
  std::vector<ComplexMatrix> local_s;
  CaseLabel case_label = CaseLabel::NoLocal;

  std::size_t dim() const;
  std::size_t coupled_dim() const;
  /// Every block element as a matrix on the joint space.
  std::vector<ComplexMatrix> tensor_elements() const;
};

StructuredBasis disintegrate(const LieBasis<double>& basis, const BipartiteDims& dims,
                             double tol = kDefaultTol);

CaseLabel classify_case(const StructuredBasis& sb, const BipartiteDims& dims);

/// diag(1, -1, 1, -1, ...) for even n_a.
ComplexMatrix sigma_even(Eigen::Index n_a);

/// For odd n_a: zero at `zero_position` (0-based), alternating +1, -1 on the
/// remaining diagonal entries, so the trace vanishes.
ComplexMatrix sigma_odd(Eigen::Index n_a, Eigen::Index zero_position);

struct CriterionResult {
  bool holds = false;
  std::size_t observability_dim = 0;
  /// Real dimension of span{Tr_A(V), i 1}; the criterion asks for n_S^2.
  std::size_t traced_dim = 0;
};

/// Necessary condition for indirect controllability given rho_a: the partial
/// traces of the observability space, together with i 1, span u(n_S).
/// rho_s must differ from the maximally mixed state.
CriterionResult criterion_details(const LieBasis<double>& basis, const BipartiteDims& dims,
                                  const DensityMatrix<double>& rho_s,
                                  const DensityMatrix<double>& rho_a, double tol = kDefaultTol);

bool indirect_criterion(const LieBasis<double>& basis, const BipartiteDims& dims,
                        const DensityMatrix<double>& rho_s, const DensityMatrix<double>& rho_a,
                        double tol = kDefaultTol);

bool indirect_criterion(const IndirectProblem& p, const DensityMatrix<double>& rho_s,
                        const DensityMatrix<double>& rho_a, double tol = kDefaultTol);

struct Counterexample {
  DensityMatrix<double> rho_s;
  std::string explanation;
};

/// A state of S that the mixed auxiliary cannot steer arbitrarily.
/// Intermediate: rho_s = 1/n_S - alpha i D_1, alpha half the largest value
/// keeping rho_s positive. NoLocal: rho_s built the same way from an element
/// of the commutant of every left factor. FullLocal: nothing. Throws
/// DisintegrationFailure when NoLocal has a trivial commutant and the
/// non-commuting left factors contradict s = 0.
std::optional<Counterexample> counterexample_state(const StructuredBasis& sb,
                                                   const LieBasis<double>& basis,
                                                   const BipartiteDims& dims,
                                                   double tol = kDefaultTol);

/// For a NoLocal labelling: looks for non-commuting left factors A, B and,
/// when found, confirms A (x) sigma_e (or the sigma_odd family) through
/// ad-saturation and [A, B] (x) 1 in the algebra. Returns true when the label
/// is contradicted, false when all left factors commute.
bool verify_case2_contradiction(const StructuredBasis& sb, const LieBasis<double>& basis,
                                const BipartiteDims& dims, double tol = kDefaultTol);

enum class AnalysisMode {
  Equivalence,    // control generates su(n_A), rho_A maximally mixed
  Exploratory,    // control generates su(n_A), user-supplied rho_A
  CriterionOnly,  // control does not generate su(n_A)
};

std::string_view to_string(AnalysisMode mode);

struct AnalysisOptions {
  double tol = kDefaultTol;
  std::optional<std::size_t> max_dim;
  /// One generic rho_S per seed.
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  /// Defaults to the maximally mixed state.
  std::optional<DensityMatrix<double>> rho_a;
};

struct BlockDims {
  std::size_t local_a = 0;
  std::vector<std::size_t> coupled;
  std::size_t local_s = 0;
};

struct SeedVerdict {
  std::uint64_t seed = 0;
  CriterionResult result;
};

struct Report {
  AnalysisMode mode = AnalysisMode::Equivalence;
  BipartiteDims dims{2, 2};
  std::size_t algebra_dim = 0;
  Eigen::Index ambient_dim = 0;
  int closure_depth = 0;
  bool completely_controllable = false;
  std::optional<CaseLabel> case_label;
  std::optional<BlockDims> blocks;
  bool rho_a_maximally_mixed = true;
  std::optional<ComplexMatrix> rho_a;
  std::vector<SeedVerdict> generic;
  /// Criterion on the counterexample state, paired with the mixed rho_A.
  std::optional<Counterexample> counterexample;
  std::optional<CriterionResult> counterexample_result;
  /// Criterion verdict over every tested state (generic and counterexample).
  bool indirect_criterion_holds = false;
  double tol = kDefaultTol;
  std::vector<std::string> notes;
  /// Disagreements between the computation and the theorem's predictions.
  std::vector<std::string> inconsistencies;
};

/// Full pipeline. Throws HypothesisViolation when the control algebra does
/// not generate su(n_A), ClosureCapExceeded when max_dim is hit.
Report check_equivalence(const IndirectProblem& p, const AnalysisOptions& options = {});

/// check_equivalence, downgraded to a criterion-only report when the control
/// hypothesis fails.
Report analyze(const IndirectProblem& p, const AnalysisOptions& options = {});

}  // namespace indirect

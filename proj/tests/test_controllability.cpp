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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "indirect/controllability.hpp"
#include "indirect/systems.hpp"
#include "test_util.hpp"

namespace indirect {
namespace {

using testing::C;
using testing::kI;
using testing::Rng;

ComplexMatrix skew(char axis) { return pauli(axis, PauliConvention::SkewHermitian); }

ComplexMatrix idiag(std::initializer_list<double> v) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) {
    d(k++) = x;
  }
  return kI * d.cast<C>().asDiagonal().toDenseMatrix();
}

LieBasis<double> closure_of(const IndirectProblem& p) {
  return lie_closure(build_generators(p), p.dims());
}

TEST(IndirectProblem, ValidatesInputs) {
  const BipartiteDims dims(2, 2);
  const auto gm = gell_mann_basis(2);
  EXPECT_NO_THROW(IndirectProblem(dims, skew('x'), skew('z'), {{skew('z'), skew('z')}}, gm));
  EXPECT_THROW(IndirectProblem(dims, pauli('x'), skew('z'), {{skew('z'), skew('z')}}, gm),
               ValidationError);
  EXPECT_THROW(IndirectProblem(dims, skew('x'), skew('z'), {}, gm), ValidationError);
  EXPECT_THROW(IndirectProblem(dims, skew('x'), skew('z'),
                               {{ComplexMatrix::Zero(2, 2), skew('z')}}, gm),
               ValidationError);
  EXPECT_THROW(IndirectProblem(dims, skew('x'), skew('z'),
                               {{skew('z'), skew('z')}, {skew('x'), ComplexMatrix(2.0 * skew('z'))}},
                               gm),
               ValidationError);
  EXPECT_THROW(IndirectProblem(dims, skew('x'), skew('z'),
                               {{ComplexMatrix::Zero(3, 3), skew('z')}}, gm),
               DimensionMismatch);
}

TEST(BuildGenerators, DriftFollowedByLiftedControls) {
  const auto p = example_two_qubit_case1().problem;
  const auto gens = build_generators(p);
  ASSERT_EQ(gens.size(), 1 + p.control_algebra().size());
  ComplexMatrix j = kron(p.drift_s(), identity(2)) + kron(identity(2), p.drift_a());
  for (const auto& c : p.couplings()) {
    j += kI * kron(c.left, c.right);
  }
  EXPECT_LT((gens[0] - j).norm(), 1e-14);
  for (std::size_t k = 0; k < p.control_algebra().size(); ++k) {
    EXPECT_LT((gens[k + 1] - kron(identity(2), p.control_algebra()[k])).norm(), 1e-14);
  }
}

TEST(CompleteControllability, Examples) {
  const auto case1 = example_two_qubit_case1();
  EXPECT_TRUE(is_completely_controllable(closure_of(case1.problem), case1.dims));
  const auto inter = example_two_qubit_intermediate();
  EXPECT_FALSE(is_completely_controllable(closure_of(inter.problem), inter.dims));
}

// Dependence of x, y over R from the HS Gram determinant.
bool gram_dependent(const ComplexMatrix& x, const ComplexMatrix& y) {
  const double xx = hs_real(x, x), yy = hs_real(y, y), xy = hs_real(x, y);
  return xx * yy - xy * xy <= 1e-9 * std::max(1.0, xx * yy);
}

TEST(Lemma1, HandExamples) {
  EXPECT_TRUE(lemma1_dependent(skew('z'), ComplexMatrix(-3.0 * skew('z'))));
  EXPECT_FALSE(lemma1_dependent(skew('z'), skew('x')));
  EXPECT_TRUE(lemma1_dependent(idiag({1, -1, 0}), idiag({2, -2, 0})));
  EXPECT_FALSE(lemma1_dependent(idiag({1, -1, 0}), idiag({0, 1, -1})));
  // zero is dependent on anything
  EXPECT_TRUE(lemma1_dependent(ComplexMatrix::Zero(3, 3), idiag({0, 1, -1})));
}

TEST(Lemma1, DegenerateSpectraAreHandled) {
  Rng rng(30);
  const ComplexMatrix t = testing::random_unitary(4, rng);
  const ComplexMatrix x = t * idiag({1, 1, -1, -1}) * t.adjoint();
  const ComplexMatrix y = t * idiag({1, -1, 1, -1}) * t.adjoint();
  EXPECT_FALSE(lemma1_dependent(x, y));
  EXPECT_TRUE(lemma1_dependent(x, ComplexMatrix(0.5 * x)));
  const auto search = lemma1_witness(x, y);
  ASSERT_TRUE(search.witness.has_value());
  EXPECT_GT(commutator(commutator(*search.witness, x), commutator(*search.witness, y)).norm(),
            1e-10);
}

TEST(Lemma1, AgreesWithGramOracle) {
  Rng rng(31);
  std::normal_distribution<double> normal(0, 1);
  for (Eigen::Index n : {2, 3, 4, 5}) {
    for (int trial = 0; trial < 60; ++trial) {
      ComplexMatrix x, y;
      const ComplexMatrix t = testing::random_unitary(n, rng);
      Eigen::VectorXd dx(n), dy(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        dx(k) = normal(rng);
        dy(k) = normal(rng);
      }
      dx.array() -= dx.mean();
      dy.array() -= dy.mean();
      switch (trial % 3) {
        case 0:  // commuting, generically independent
          break;
        case 1:  // commuting, dependent
          dy = normal(rng) * dx;
          break;
        default:  // generic
          break;
      }
      x = t * (kI * dx.cast<C>().asDiagonal().toDenseMatrix()) * t.adjoint();
      y = trial % 3 == 2 ? random_su<double>(n, rng)
                         : ComplexMatrix(t * (kI * dy.cast<C>().asDiagonal().toDenseMatrix()) *
                                         t.adjoint());
      EXPECT_EQ(lemma1_dependent(x, y), gram_dependent(x, y)) << "n=" << n << " trial=" << trial;
    }
  }
}

TEST(Lemma1Witness, ThreeByThreeExample) {
  const ComplexMatrix x = idiag({1, -1, 0});
  const ComplexMatrix y = idiag({0, 1, -1});
  const auto search = lemma1_witness(x, y);
  EXPECT_FALSE(search.two_dimensional);
  ASSERT_TRUE(search.witness.has_value());
  EXPECT_TRUE(is_skew_hermitian(*search.witness));
  EXPECT_GT(commutator(commutator(*search.witness, x), commutator(*search.witness, y)).norm(),
            1e-10);
}

TEST(Lemma1Witness, DependentPairsAndSu2HaveNoWitness) {
  const auto dep = lemma1_witness(idiag({1, -1, 0}), idiag({-2, 2, 0}));
  EXPECT_FALSE(dep.witness.has_value());
  const auto su2 = lemma1_witness(skew('z'), ComplexMatrix(2.0 * skew('z')));
  EXPECT_TRUE(su2.two_dimensional);
  EXPECT_FALSE(su2.witness.has_value());
  EXPECT_THROW(lemma1_witness(skew('x'), skew('y')), ValidationError);
}

TEST(Disintegrate, Case1IsFullLocal) {
  const auto m = example_two_qubit_case1();
  const auto basis = closure_of(m.problem);
  const auto sb = disintegrate(basis, m.dims);
  EXPECT_EQ(sb.local_a.size(), 3u);
  EXPECT_EQ(sb.local_s.size(), 3u);
  EXPECT_EQ(sb.coupled.size(), 3u);
  for (const auto& block : sb.coupled) {
    EXPECT_EQ(block.left.size(), 3u);
  }
  EXPECT_EQ(sb.dim(), basis.dim());
  EXPECT_EQ(sb.case_label, CaseLabel::FullLocal);
  EXPECT_EQ(classify_case(sb, m.dims), CaseLabel::FullLocal);
}

TEST(Disintegrate, IntermediateBlocks) {
  const auto m = example_two_qubit_intermediate();
  const auto basis = closure_of(m.problem);
  const auto sb = disintegrate(basis, m.dims);
  EXPECT_EQ(sb.local_a.size(), 3u);
  EXPECT_EQ(sb.local_s.size(), 1u);
  EXPECT_EQ(sb.coupled_dim(), 6u);
  EXPECT_EQ(sb.case_label, CaseLabel::Intermediate);
  // the one local S direction is i sigma_x up to sign
  EXPECT_NEAR(std::abs(hs_real(sb.local_s[0], skew('x'))), std::sqrt(2.0), 1e-10);
  // every element of the structured basis lies in L
  for (const auto& e : sb.tensor_elements()) {
    EXPECT_TRUE(contains(basis, e, 1e-8));
  }
}

TEST(Disintegrate, NoDriftIsNoLocal) {
  const auto m = example_no_drift_case_degenerate();
  const auto basis = closure_of(m.problem);
  const auto sb = disintegrate(basis, m.dims);
  EXPECT_EQ(sb.local_s.size(), 0u);
  EXPECT_EQ(sb.case_label, CaseLabel::NoLocal);
  EXPECT_EQ(sb.dim(), 6u);
}

TEST(Disintegrate, RequiresFullAuxiliaryControl) {
  const BipartiteDims dims(2, 2);
  const IndirectProblem p(dims, skew('x'), skew('z'), {{skew('z'), skew('z')}}, {skew('z')});
  EXPECT_THROW(disintegrate(closure_of(p), dims), HypothesisViolation);
}

TEST(Disintegrate, ControlOnlyAlgebraHasNoSystemPart) {
  const BipartiteDims dims(2, 3);
  std::vector<ComplexMatrix> gens;
  for (const auto& g : gell_mann_basis(3)) {
    gens.push_back(kron(identity(2), g));
  }
  const auto sb = disintegrate(lie_closure(gens, dims), dims);
  EXPECT_EQ(sb.local_a.size(), 8u);
  EXPECT_EQ(sb.coupled_dim(), 0u);
  EXPECT_EQ(sb.case_label, CaseLabel::NoLocal);
}

TEST(Disintegrate, DimensionSumOnRandomProblems) {
  Rng rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const BipartiteDims dims(2 + trial % 2, 2 + (trial / 2) % 2);
    const auto p = testing::random_problem(dims, rng);
    const auto basis = closure_of(p);
    const auto sb = disintegrate(basis, dims);
    EXPECT_EQ(sb.dim(), basis.dim());
    EXPECT_EQ(sb.case_label, CaseLabel::FullLocal);
  }
}

TEST(SigmaMatrices, Shapes) {
  EXPECT_EQ(sigma_even(2), ComplexMatrix(pauli('z')));
  const ComplexMatrix e4 = sigma_even(4);
  EXPECT_EQ(e4.diagonal().real(), Eigen::Vector4d(1, -1, 1, -1));
  for (Eigen::Index n : {3, 5}) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const ComplexMatrix o = sigma_odd(n, j);
      EXPECT_EQ(o(j, j), C(0));
      EXPECT_LT(std::abs(o.trace()), 1e-15);
      EXPECT_NEAR((o * o).trace().real(), static_cast<double>(n - 1), 1e-15);
    }
  }
  EXPECT_THROW(sigma_even(3), ValidationError);
  EXPECT_THROW(sigma_odd(4, 0), ValidationError);
  EXPECT_THROW(sigma_odd(3, 3), ValidationError);
}

TEST(SigmaMatrices, EvenBracketIdentity) {
  Rng rng(33);
  for (Eigen::Index na : {2, 4}) {
    const ComplexMatrix e = sigma_even(na);
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix a = random_su<double>(3, rng), b = random_su<double>(3, rng);
      const ComplexMatrix lhs = commutator(kron(a, e), kron(b, e));
      EXPECT_LE((lhs - kron(commutator(a, b), identity(na))).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(SigmaMatrices, OddAveragedBracketIdentity) {
  Rng rng(34);
  for (Eigen::Index na : {3, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix a = random_su<double>(2, rng), b = random_su<double>(2, rng);
      ComplexMatrix sum = ComplexMatrix::Zero(2 * na, 2 * na);
      for (Eigen::Index j = 0; j < na; ++j) {
        const ComplexMatrix o = sigma_odd(na, j);
        sum += commutator(kron(a, o), kron(b, o));
      }
      sum /= static_cast<double>(na - 1);
      EXPECT_LE((sum - kron(commutator(a, b), identity(na))).cwiseAbs().maxCoeff(), 1e-11);
    }
  }
}

TEST(Criterion, HoldsForCase1GenericStates) {
  const auto m = example_two_qubit_case1();
  const auto basis = closure_of(m.problem);
  Rng rng(35);
  const auto mixed = DensityMatrix<double>::maximally_mixed(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho_s = random_density<double>(2, rng);
    const auto r = criterion_details(basis, m.dims, rho_s, mixed);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.traced_dim, 4u);
  }
}

TEST(Criterion, RejectsMaximallyMixedSystemState) {
  const auto m = example_two_qubit_case1();
  const auto mixed = DensityMatrix<double>::maximally_mixed(2);
  EXPECT_THROW(indirect_criterion(m.problem, mixed, mixed), ValidationError);
}

TEST(Counterexample, IntermediateStateFailsCriterion) {
  const auto m = example_two_qubit_intermediate();
  const auto basis = closure_of(m.problem);
  const auto sb = disintegrate(basis, m.dims);
  const auto ce = counterexample_state(sb, basis, m.dims);
  ASSERT_TRUE(ce.has_value());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ce->rho_s.matrix());
  EXPECT_NEAR(es.eigenvalues()(0), 0.25, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 0.75, 1e-12);
  // the state is built along the local direction i sigma_x
  EXPECT_LT(commutator(ce->rho_s.matrix(), pauli('x')).norm(), 1e-12);
  const auto mixed = DensityMatrix<double>::maximally_mixed(2);
  const auto r = criterion_details(basis, m.dims, ce->rho_s, mixed);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.traced_dim, 2u);
}

TEST(Counterexample, NoLocalStateIsFixedPoint) {
  const auto m = example_no_drift_case_degenerate();
  const auto basis = closure_of(m.problem);
  const auto sb = disintegrate(basis, m.dims);
  const auto ce = counterexample_state(sb, basis, m.dims);
  ASSERT_TRUE(ce.has_value());
  const auto mixed = DensityMatrix<double>::maximally_mixed(2);
  const ComplexMatrix joint = kron(ce->rho_s.matrix(), mixed.matrix());
  for (const auto& e : basis.elements) {
    EXPECT_LT(commutator(e, joint).norm(), 1e-10);
  }
  EXPECT_FALSE(indirect_criterion(basis, m.dims, ce->rho_s, mixed));
}

TEST(Counterexample, NoneForFullLocal) {
  const auto m = example_two_qubit_case1();
  const auto basis = closure_of(m.problem);
  EXPECT_FALSE(counterexample_state(disintegrate(basis, m.dims), basis, m.dims).has_value());
}

StructuredBasis fabricated_no_local(const LieBasis<double>& basis, const BipartiteDims& dims) {
  auto sb = disintegrate(basis, dims);
  sb.local_s.clear();
  sb.case_label = CaseLabel::NoLocal;
  return sb;
}

TEST(VerifyCase2, NonCommutingFactorsContradictLabel) {
  const BipartiteDims dims(2, 2);
  const auto gm = gell_mann_basis(2);
  std::vector<ComplexMatrix> gens = {ComplexMatrix(kI * kron(skew('x'), gm[0])),
                                     ComplexMatrix(kI * kron(skew('y'), gm[1]))};
  for (const auto& g : gm) {
    gens.push_back(kron(identity(2), g));
  }
  const auto basis = lie_closure(gens, dims);
  const auto sb = fabricated_no_local(basis, dims);
  EXPECT_TRUE(verify_case2_contradiction(sb, basis, dims));
  EXPECT_TRUE(contains(basis, ComplexMatrix(kron(commutator(pauli('x'), pauli('y')), identity(2))),
                       1e-8));
  EXPECT_THROW(counterexample_state(sb, basis, dims), DisintegrationFailure);
}

TEST(VerifyCase2, OddAuxiliaryVariant) {
  const BipartiteDims dims(2, 3);
  const auto gm = gell_mann_basis(3);
  std::vector<ComplexMatrix> gens = {ComplexMatrix(kI * kron(skew('x'), gm[0])),
                                     ComplexMatrix(kI * kron(skew('y'), gm[3]))};
  for (const auto& g : gm) {
    gens.push_back(kron(identity(2), g));
  }
  const auto basis = lie_closure(gens, dims);
  EXPECT_TRUE(verify_case2_contradiction(fabricated_no_local(basis, dims), basis, dims));
}

TEST(VerifyCase2, CommutingFactorsConfirmLabel) {
  const auto m = example_no_drift_case_degenerate();
  const auto basis = closure_of(m.problem);
  const auto sb = disintegrate(basis, m.dims);
  ASSERT_EQ(sb.case_label, CaseLabel::NoLocal);
  EXPECT_FALSE(verify_case2_contradiction(sb, basis, m.dims));
  auto relabelled = sb;
  relabelled.case_label = CaseLabel::FullLocal;
  EXPECT_THROW(verify_case2_contradiction(relabelled, basis, m.dims), ValidationError);
}

TEST(CheckEquivalence, ReportsForExamples) {
  const auto r1 = check_equivalence(example_two_qubit_case1().problem);
  EXPECT_EQ(r1.mode, AnalysisMode::Equivalence);
  EXPECT_EQ(r1.algebra_dim, 15u);
  EXPECT_TRUE(r1.completely_controllable);
  EXPECT_TRUE(r1.indirect_criterion_holds);
  EXPECT_TRUE(r1.inconsistencies.empty());
  EXPECT_EQ(r1.generic.size(), 3u);

  const auto r2 = check_equivalence(example_two_qubit_intermediate().problem);
  EXPECT_FALSE(r2.completely_controllable);
  ASSERT_TRUE(r2.counterexample_result.has_value());
  EXPECT_FALSE(r2.counterexample_result->holds);
  EXPECT_FALSE(r2.indirect_criterion_holds);
  EXPECT_TRUE(r2.inconsistencies.empty());
}

TEST(CheckEquivalence, HypothesisViolationAndDowngrade) {
  const BipartiteDims dims(2, 2);
  const IndirectProblem p(dims, skew('x'), skew('z'), {{skew('z'), skew('z')}}, {skew('z')});
  EXPECT_THROW(check_equivalence(p), HypothesisViolation);
  const auto r = analyze(p);
  EXPECT_EQ(r.mode, AnalysisMode::CriterionOnly);
  EXPECT_FALSE(r.case_label.has_value());
  EXPECT_FALSE(r.notes.empty());
}

TEST(CheckEquivalence, MaxDimCap) {
  AnalysisOptions options;
  options.max_dim = 8;
  EXPECT_THROW(check_equivalence(example_two_qubit_case1().problem, options), ClosureCapExceeded);
}

TEST(CheckEquivalence, ExploratoryRhoA) {
  AnalysisOptions options;
  Rng rng(36);
  options.rho_a = random_density<double>(2, rng);
  const auto r = check_equivalence(example_two_qubit_case1().problem, options);
  EXPECT_EQ(r.mode, AnalysisMode::Exploratory);
  EXPECT_FALSE(r.rho_a_maximally_mixed);
}

TEST(LocalInvariance, ConjugatedProblemsGiveSameVerdicts) {
  Rng rng(37);
  for (const auto& m : {example_two_qubit_intermediate(), example_no_drift_case_degenerate()}) {
    const auto ref = check_equivalence(m.problem);
    for (int trial = 0; trial < 5; ++trial) {
      const auto t = locally_transformed(m.problem, testing::random_unitary(2, rng),
                                         testing::random_unitary(2, rng));
      const auto r = check_equivalence(t);
      EXPECT_EQ(r.algebra_dim, ref.algebra_dim);
      EXPECT_EQ(r.case_label, ref.case_label);
      EXPECT_EQ(r.indirect_criterion_holds, ref.indirect_criterion_holds);
    }
  }
}

TEST(CheckEquivalence, GenericVerdictsAgreeOnStructuredThreeByThreeProblems) {
  for (std::uint64_t stream : {3, 5}) {
    Rng rng(stream * 7919);
    for (int k = 0; k < 50; ++k) {
      const BipartiteDims dims(2 + k % 2, 2 + (k / 2) % 2);
      std::optional<IndirectProblem> p;
      switch (k % 5) {
        case 0:
          p = testing::random_problem(dims, rng);
          break;
        case 1:
          p = testing::random_problem(dims, rng, 2);
          break;
        case 2:
          p = testing::abelian_intermediate_problem(dims, rng);
          break;
        case 3:
          p = testing::no_local_problem(dims, rng);
          break;
        default:
          p = testing::anticommuting_intermediate_problem(rng);
          break;
      }
      if ((k % 5 != 2 && k % 5 != 3) || dims.n() != 9) {
        continue;
      }
      const auto r = check_equivalence(*p);
      EXPECT_TRUE(r.inconsistencies.empty()) << "stream " << stream << " k " << k;
      for (const auto& g : r.generic) {
        EXPECT_EQ(g.result.observability_dim, r.generic.front().result.observability_dim);
        EXPECT_LE(g.result.traced_dim, 9u);
      }
    }
  }
}

}  // namespace
}  // namespace indirect

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

#include "indirect/controllability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "indirect/bases.hpp"
#include "indirect/random.hpp"

namespace indirect {

namespace {

using C = std::complex<double>;
const C kI(0, 1);

bool in_su(const ComplexMatrix& m, double tol) {
  return is_skew_hermitian(m, tol) && is_traceless(m, tol);
}

void require_su(const ComplexMatrix& m, Eigen::Index n, double tol, const std::string& what) {
  if (m.rows() != n || m.cols() != n) {
    throw DimensionMismatch(what + ": expected " + std::to_string(n) + "x" + std::to_string(n) +
                            ", got " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
  if (!in_su(m, tol)) {
    throw ValidationError(what + ": not a traceless skew-Hermitian matrix");
  }
}

ComplexMatrix conjugate_by(const ComplexMatrix& t, const ComplexMatrix& m) {
  return t * m * t.adjoint();
}

/// Joint eigenbasis of a commuting pair of skew-Hermitian matrices:
/// u^dagger x u = i diag(xs), u^dagger y u = i diag(ys).
struct JointDiagonalization {
  ComplexMatrix u;
  Eigen::VectorXd xs;
  Eigen::VectorXd ys;
};

JointDiagonalization diagonalize_pair(const ComplexMatrix& x, const ComplexMatrix& y,
                                      double tol) {
  const Eigen::Index n = x.rows();
  const ComplexMatrix hx = -kI * x;
  const ComplexMatrix hy = -kI * y;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> sx(hx);
  ComplexMatrix u = sx.eigenvectors();
  const Eigen::VectorXd ex = sx.eigenvalues();
  const double gap = tol * detail::tol_scale(x);
  // Degenerate eigenspaces of x: diagonalize y inside each one.
  for (Eigen::Index begin = 0; begin < n;) {
    Eigen::Index end = begin + 1;
    while (end < n && ex(end) - ex(end - 1) <= gap) {
      ++end;
    }
    if (end - begin > 1) {
      const ComplexMatrix sub = u.middleCols(begin, end - begin);
      ComplexMatrix block = sub.adjoint() * hy * sub;
      block = (block + block.adjoint()) / 2.0;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> sy(block);
      u.middleCols(begin, end - begin) = sub * sy.eigenvectors();
    }
    begin = end;
  }
  JointDiagonalization out{u, Eigen::VectorXd(n), Eigen::VectorXd(n)};
  const ComplexMatrix dx = u.adjoint() * hx * u;
  const ComplexMatrix dy = u.adjoint() * hy * u;
  for (Eigen::Index l = 0; l < n; ++l) {
    out.xs(l) = dx(l, l).real();
    out.ys(l) = dy(l, l).real();
  }
  return out;
}

void require_lemma1_inputs(const ComplexMatrix& x, const ComplexMatrix& y, double tol,
                           const char* what) {
  detail::require_same_shape(x, y, what);
  if (!in_su(x, tol) || !in_su(y, tol)) {
    throw ValidationError(std::string(what) + ": inputs must be traceless skew-Hermitian");
  }
}

bool commute(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return commutator(a, b).norm() <= tol * std::max(1.0, a.norm() * b.norm());
}

/// |j><k| - |k><j|
ComplexMatrix rotation_generator(Eigen::Index n, Eigen::Index j, Eigen::Index k) {
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  a(j, k) = 1.0;
  a(k, j) = -1.0;
  return a;
}

std::vector<ComplexMatrix> lift_right(const std::vector<ComplexMatrix>& factors,
                                      const BipartiteDims& dims) {
  std::vector<ComplexMatrix> out;
  out.reserve(factors.size());
  for (const auto& f : factors) {
    out.push_back(kron(identity(dims.n_s()), f));
  }
  return out;
}

/// Factor extraction from elements of a tensor plane.
ComplexMatrix left_factor(const ComplexMatrix& element, const ComplexMatrix& right,
                          const BipartiteDims& dims) {
  // element = i S (x) right  =>  Tr_A((1 (x) right^dagger) element) = i S ||right||^2
  const ComplexMatrix contracted =
      partial_trace_a(kron(identity(dims.n_s()), ComplexMatrix(right.adjoint())) * element, dims);
  return -kI * contracted / right.squaredNorm();
}

std::vector<ComplexMatrix> intersect_plane(const LieBasis<double>& basis,
                                           const std::vector<ComplexMatrix>& plane, double tol) {
  const Subspace<double> algebra{basis.ambient, basis.elements};
  const Subspace<double> p{basis.ambient, orthonormalize<double>(plane, {}, tol)};
  return subspace_intersect(algebra, p, tol).elements;
}

/// rho = 1/n - alpha i t, alpha at half the largest value keeping rho >= 0.
DensityMatrix<double> shifted_mixed_state(const ComplexMatrix& t) {
  const Eigen::Index n = t.rows();
  ComplexMatrix h = kI * t;
  h = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues().maxCoeff();
  const double alpha = 0.5 / (static_cast<double>(n) * top);
  ComplexMatrix rho = identity(n) / static_cast<double>(n) - alpha * h;
  rho = (rho + rho.adjoint()) / 2.0;
  return DensityMatrix<double>::from_matrix(std::move(rho));
}

/// Commutant of `factors` inside su(n), as an orthonormal list.
std::vector<ComplexMatrix> commutant(const std::vector<ComplexMatrix>& factors, Eigen::Index n,
                                     double tol) {
  const auto gm = gell_mann_basis(n);
  if (factors.empty()) {
    return orthonormalize<double>(gm, {}, tol);
  }
  const Eigen::Index block = 2 * n * n;
  Eigen::MatrixXd system(block * static_cast<Eigen::Index>(factors.size()),
                         static_cast<Eigen::Index>(gm.size()));
  for (std::size_t k = 0; k < gm.size(); ++k) {
    for (std::size_t f = 0; f < factors.size(); ++f) {
      const ComplexMatrix c = commutator(gm[k], factors[f]);
      system.block(block * static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(k), block, 1) =
          detail::real_view(c);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double threshold = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  std::vector<ComplexMatrix> kernel;
  for (Eigen::Index col = 0; col < svd.matrixV().cols(); ++col) {
    const double s = col < sv.size() ? sv(col) : 0.0;
    if (s > threshold) {
      continue;
    }
    ComplexMatrix t = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < gm.size(); ++k) {
      t += svd.matrixV()(static_cast<Eigen::Index>(k), col) * gm[k];
    }
    kernel.push_back(std::move(t));
  }
  return orthonormalize<double>(kernel, {}, tol);
}

std::string describe_blocks(const StructuredBasis& sb) {
  std::ostringstream os;
  os << "local_a=" << sb.local_a.size() << " coupled=" << sb.coupled_dim()
     << " local_s=" << sb.local_s.size() << " total=" << sb.dim();
  return os.str();
}

}  // namespace

std::string_view to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::FullLocal:
      return "FullLocal";
    case CaseLabel::NoLocal:
      return "NoLocal";
    case CaseLabel::Intermediate:
      return "Intermediate";
  }
  return "unknown";
}

std::string_view to_string(AnalysisMode mode) {
  switch (mode) {
    case AnalysisMode::Equivalence:
      return "equivalence";
    case AnalysisMode::Exploratory:
      return "exploratory";
    case AnalysisMode::CriterionOnly:
      return "criterion-only";
  }
  return "unknown";
}

IndirectProblem::IndirectProblem(BipartiteDims dims, ComplexMatrix drift_s, ComplexMatrix drift_a,
                                 std::vector<Coupling> couplings,
                                 std::vector<ComplexMatrix> control_algebra, double tol)
    : dims_(dims),
      drift_s_(std::move(drift_s)),
      drift_a_(std::move(drift_a)),
      couplings_(std::move(couplings)),
      control_algebra_(std::move(control_algebra)) {
  require_su(drift_s_, dims_.n_s(), tol, "drift K");
  require_su(drift_a_, dims_.n_a(), tol, "drift L");
  if (couplings_.empty()) {
    throw ValidationError("IndirectProblem: at least one coupling (S_j, sigma_j) is required");
  }
  std::vector<ComplexMatrix> rights;
  for (std::size_t j = 0; j < couplings_.size(); ++j) {
    const std::string tag = "coupling " + std::to_string(j);
    require_su(couplings_[j].left, dims_.n_s(), tol, tag + " S");
    require_su(couplings_[j].right, dims_.n_a(), tol, tag + " sigma");
    if (couplings_[j].left.norm() <= tol) {
      throw ValidationError(tag + ": S is zero");
    }
    rights.push_back(couplings_[j].right);
  }
  if (orthonormalize<double>(rights, {}, tol).size() != rights.size()) {
    throw ValidationError("IndirectProblem: coupling sigmas are linearly dependent");
  }
  for (std::size_t b = 0; b < control_algebra_.size(); ++b) {
    require_su(control_algebra_[b], dims_.n_a(), tol, "control " + std::to_string(b));
  }
}

IndirectProblem locally_transformed(const IndirectProblem& p, const ComplexMatrix& t_s,
                                    const ComplexMatrix& t_a) {
  std::vector<Coupling> couplings;
  for (const auto& c : p.couplings()) {
    couplings.push_back({conjugate_by(t_s, c.left), conjugate_by(t_a, c.right)});
  }
  std::vector<ComplexMatrix> control;
  for (const auto& b : p.control_algebra()) {
    control.push_back(conjugate_by(t_a, b));
  }
  return IndirectProblem(p.dims(), conjugate_by(t_s, p.drift_s()), conjugate_by(t_a, p.drift_a()),
                         std::move(couplings), std::move(control));
}

std::vector<ComplexMatrix> build_generators(const IndirectProblem& p) {
  const auto& dims = p.dims();
  const ComplexMatrix one_s = identity(dims.n_s());
  const ComplexMatrix one_a = identity(dims.n_a());
  ComplexMatrix j = kron(p.drift_s(), one_a) + kron(one_s, p.drift_a());
  for (const auto& c : p.couplings()) {
    j += kI * kron(c.left, c.right);
  }
  std::vector<ComplexMatrix> out{std::move(j)};
  for (const auto& b : p.control_algebra()) {
    out.push_back(kron(one_s, b));
  }
  return out;
}

bool is_completely_controllable(const LieBasis<double>& basis, const BipartiteDims& dims) {
  return static_cast<Eigen::Index>(basis.dim()) == dims.n() * dims.n() - 1;
}

bool lemma1_dependent(const ComplexMatrix& x, const ComplexMatrix& y, double tol) {
  require_lemma1_inputs(x, y, tol, "lemma1_dependent");
  if (x.norm() <= tol || y.norm() <= tol) {
    return true;
  }
  if (!commute(x, y, tol)) {
    return false;
  }
  const auto jd = diagonalize_pair(x, y, tol);
  const double scale = std::max(1.0, jd.xs.cwiseAbs().maxCoeff() * jd.ys.cwiseAbs().maxCoeff());
  const Eigen::Index n = x.rows();
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      if (std::abs(jd.xs(b) * jd.ys(a) - jd.xs(a) * jd.ys(b)) > tol * scale) {
        return false;
      }
    }
  }
  return true;
}

WitnessSearch lemma1_witness(const ComplexMatrix& x, const ComplexMatrix& y, double tol) {
  require_lemma1_inputs(x, y, tol, "lemma1_witness");
  if (!commute(x, y, tol)) {
    throw ValidationError("lemma1_witness: inputs do not commute");
  }
  const Eigen::Index n = x.rows();
  WitnessSearch out;
  if (n == 2) {
    out.two_dimensional = true;
    return out;
  }
  if (lemma1_dependent(x, y, tol)) {
    return out;
  }
  const auto jd = diagonalize_pair(x, y, tol);
  const double threshold = tol * std::max(1.0, x.norm() * y.norm());
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      if (b == a) {
        continue;
      }
      for (Eigen::Index g = 0; g < n; ++g) {
        if (g == a || g == b) {
          continue;
        }
        const ComplexMatrix ab = rotation_generator(n, a, b);
        for (const ComplexMatrix& frame :
             {ComplexMatrix(ab + rotation_generator(n, g, a)),
              ComplexMatrix(ab + rotation_generator(n, g, b))}) {
          const ComplexMatrix candidate = jd.u * frame * jd.u.adjoint();
          const ComplexMatrix value =
              commutator(commutator(candidate, x), commutator(candidate, y));
          if (value.norm() > threshold) {
            out.witness = candidate;
            return out;
          }
        }
      }
    }
  }
  return out;
}

std::size_t StructuredBasis::coupled_dim() const {
  std::size_t total = 0;
  for (const auto& block : coupled) {
    total += block.left.size();
  }
  return total;
}

std::size_t StructuredBasis::dim() const {
  return local_a.size() + coupled_dim() + local_s.size();
}

std::vector<ComplexMatrix> StructuredBasis::tensor_elements() const {
  std::vector<ComplexMatrix> out;
  const ComplexMatrix one_s = identity(dims.n_s());
  const ComplexMatrix one_a = identity(dims.n_a());
  for (const auto& sigma : local_a) {
    out.push_back(kron(one_s, sigma));
  }
  for (const auto& block : coupled) {
    for (const auto& s : block.left) {
      out.push_back(kI * kron(s, block.right));
    }
  }
  for (const auto& d : local_s) {
    out.push_back(kron(d, one_a));
  }
  return out;
}

StructuredBasis disintegrate(const LieBasis<double>& basis, const BipartiteDims& dims, double tol) {
  if (basis.ambient != dims.n()) {
    throw DimensionMismatch("disintegrate: algebra does not act on the joint space");
  }
  if (!basis.closed) {
    throw ValidationError("disintegrate: algebra basis is not closed");
  }
  const ComplexMatrix one_s = identity(dims.n_s());
  const ComplexMatrix one_a = identity(dims.n_a());
  const auto gm_s = gell_mann_basis(dims.n_s());
  const auto gm_a = gell_mann_basis(dims.n_a());
  for (std::size_t k = 0; k < gm_a.size(); ++k) {
    if (!contains(basis, kron(one_s, gm_a[k]), tol)) {
      throw HypothesisViolation("disintegrate: 1 (x) sigma_" + std::to_string(k) +
                                " is not in the algebra; control does not generate su(n_A)");
    }
  }

  StructuredBasis sb{dims, {}, {}, {}, CaseLabel::NoLocal};

  std::vector<ComplexMatrix> sigmas;
  for (const auto& y : intersect_plane(basis, lift_right(gm_a, dims), tol)) {
    sigmas.push_back(partial_trace_s(y, dims) / static_cast<double>(dims.n_s()));
  }
  sb.local_a = orthonormalize<double>(sigmas, {}, tol);

  for (const auto& sigma : gm_a) {
    std::vector<ComplexMatrix> plane;
    for (const auto& g : gm_s) {
      plane.push_back(kI * kron(g, sigma));
    }
    std::vector<ComplexMatrix> lefts;
    for (const auto& y : intersect_plane(basis, plane, tol)) {
      lefts.push_back(left_factor(y, sigma, dims));
    }
    sb.coupled.push_back({sigma, orthonormalize<double>(lefts, {}, tol)});
  }

  std::vector<ComplexMatrix> plane_s;
  for (const auto& g : gm_s) {
    plane_s.push_back(kron(g, one_a));
  }
  std::vector<ComplexMatrix> ds;
  for (const auto& y : intersect_plane(basis, plane_s, tol)) {
    ds.push_back(partial_trace_a(y, dims) / static_cast<double>(dims.n_a()));
  }
  sb.local_s = orthonormalize<double>(ds, {}, tol);

  if (sb.dim() != basis.dim()) {
    throw DisintegrationFailure("disintegrate: blocks account for " + std::to_string(sb.dim()) +
                                " of " + std::to_string(basis.dim()) + " dimensions (" +
                                describe_blocks(sb) + ")");
  }
  for (const auto& element : sb.tensor_elements()) {
    if (!contains(basis, element, tol)) {
      throw DisintegrationFailure("disintegrate: reconstructed tensor element is not in the algebra");
    }
  }
  sb.case_label = classify_case(sb, dims);
  return sb;
}

CaseLabel classify_case(const StructuredBasis& sb, const BipartiteDims& dims) {
  const auto s = static_cast<Eigen::Index>(sb.local_s.size());
  if (s == dims.d_s()) {
    return CaseLabel::FullLocal;
  }
  if (s == 0) {
    return CaseLabel::NoLocal;
  }
  return CaseLabel::Intermediate;
}

ComplexMatrix sigma_even(Eigen::Index n_a) {
  if (n_a < 2 || n_a % 2 != 0) {
    throw ValidationError("sigma_even: n_a must be even, got " + std::to_string(n_a));
  }
  ComplexMatrix out = ComplexMatrix::Zero(n_a, n_a);
  for (Eigen::Index k = 0; k < n_a; ++k) {
    out(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  }
  return out;
}

ComplexMatrix sigma_odd(Eigen::Index n_a, Eigen::Index zero_position) {
  if (n_a < 3 || n_a % 2 == 0) {
    throw ValidationError("sigma_odd: n_a must be odd and >= 3, got " + std::to_string(n_a));
  }
  if (zero_position < 0 || zero_position >= n_a) {
    throw ValidationError("sigma_odd: zero position " + std::to_string(zero_position) +
                          " out of range");
  }
  ComplexMatrix out = ComplexMatrix::Zero(n_a, n_a);
  double sign = 1.0;
  for (Eigen::Index k = 0; k < n_a; ++k) {
    if (k == zero_position) {
      continue;
    }
    out(k, k) = sign;
    sign = -sign;
  }
  return out;
}

CriterionResult criterion_details(const LieBasis<double>& basis, const BipartiteDims& dims,
                                  const DensityMatrix<double>& rho_s,
                                  const DensityMatrix<double>& rho_a, double tol) {
  if (rho_s.dim() == dims.n_s() && rho_s.is_maximally_mixed(tol)) {
    throw ValidationError("indirect_criterion: rho_S must differ from the maximally mixed state");
  }
  const auto v = observability_space(rho_s, rho_a, basis, dims, tol);
  std::vector<ComplexMatrix> traced;
  traced.reserve(v.dim() + 1);
  traced.push_back(kI * identity(dims.n_s()));
  for (const auto& e : v.elements) {
    traced.push_back(partial_trace_a(e, dims));
  }
  CriterionResult out;
  out.observability_dim = v.dim();
  out.traced_dim = real_rank(traced, tol);
  out.holds = static_cast<Eigen::Index>(out.traced_dim) == dims.n_s() * dims.n_s();
  return out;
}

bool indirect_criterion(const LieBasis<double>& basis, const BipartiteDims& dims,
                        const DensityMatrix<double>& rho_s, const DensityMatrix<double>& rho_a,
                        double tol) {
  return criterion_details(basis, dims, rho_s, rho_a, tol).holds;
}

bool indirect_criterion(const IndirectProblem& p, const DensityMatrix<double>& rho_s,
                        const DensityMatrix<double>& rho_a, double tol) {
  const auto basis = lie_closure(build_generators(p), p.dims(), tol);
  return indirect_criterion(basis, p.dims(), rho_s, rho_a, tol);
}

bool verify_case2_contradiction(const StructuredBasis& sb, const LieBasis<double>& basis,
                                const BipartiteDims& dims, double tol) {
  if (sb.case_label != CaseLabel::NoLocal) {
    throw ValidationError("verify_case2_contradiction: structured basis is not labelled NoLocal");
  }
  struct Factor {
    const ComplexMatrix* left;
    const ComplexMatrix* right;
  };
  std::vector<Factor> factors;
  for (const auto& block : sb.coupled) {
    for (const auto& s : block.left) {
      factors.push_back({&s, &block.right});
    }
  }
  const Factor* fa = nullptr;
  const Factor* fb = nullptr;
  for (std::size_t p = 0; p < factors.size() && fa == nullptr; ++p) {
    for (std::size_t q = p + 1; q < factors.size(); ++q) {
      if (!commute(*factors[p].left, *factors[q].left, tol)) {
        fa = &factors[p];
        fb = &factors[q];
        break;
      }
    }
  }
  if (fa == nullptr) {
    return false;
  }

  // ad-saturation under 1 (x) su(n_A) spreads i A (x) sigma_1 over i A (x) su(n_A).
  const auto local = lie_closure(lift_right(sb.local_a, dims), tol);
  const auto spread_a = ad_saturate<double>(kI * kron(*fa->left, *fa->right), local, tol);
  const auto spread_b = ad_saturate<double>(kI * kron(*fb->left, *fb->right), local, tol);
  const ComplexMatrix& a = *fa->left;
  const ComplexMatrix& b = *fb->left;

  std::vector<ComplexMatrix> diagonals;
  double weight = 1.0;
  if (dims.n_a() % 2 == 0) {
    diagonals.push_back(sigma_even(dims.n_a()));
  } else {
    for (Eigen::Index j = 0; j < dims.n_a(); ++j) {
      diagonals.push_back(sigma_odd(dims.n_a(), j));
    }
    weight = 1.0 / static_cast<double>(dims.n_a() - 1);
  }
  ComplexMatrix bracket = ComplexMatrix::Zero(dims.n(), dims.n());
  for (const auto& d : diagonals) {
    const ComplexMatrix ad = kron(a, d);
    const ComplexMatrix bd = kron(b, d);
    if (!contains(spread_a, ad, tol) || !contains(spread_b, bd, tol)) {
      throw DisintegrationFailure(
          "verify_case2_contradiction: diagonal tensor element missing from the ad-saturation");
    }
    bracket += weight * commutator(ad, bd);
  }
  const ComplexMatrix expected = kron(commutator(a, b), identity(dims.n_a()));
  if ((bracket - expected).norm() > tol * detail::tol_scale(expected)) {
    throw DisintegrationFailure("verify_case2_contradiction: diagonal bracket identity failed");
  }
  if (!contains(basis, bracket, tol)) {
    throw DisintegrationFailure(
        "verify_case2_contradiction: [A, B] (x) 1 is not in the algebra");
  }
  return true;
}

std::optional<Counterexample> counterexample_state(const StructuredBasis& sb,
                                                   const LieBasis<double>& basis,
                                                   const BipartiteDims& dims, double tol) {
  switch (sb.case_label) {
    case CaseLabel::FullLocal:
      return std::nullopt;
    case CaseLabel::Intermediate: {
      std::ostringstream os;
      os << "rho_S = 1/" << dims.n_s() << " - alpha i D_1 with D_1 the first of "
         << sb.local_s.size() << " local S directions (s < d_S = " << dims.d_s()
         << "); Tr_A(V) stays inside span{D} + span{i 1}";
      return Counterexample{shifted_mixed_state(sb.local_s.front()), os.str()};
    }
    case CaseLabel::NoLocal: {
      std::vector<ComplexMatrix> lefts = sb.local_s;
      for (const auto& block : sb.coupled) {
        lefts.insert(lefts.end(), block.left.begin(), block.left.end());
      }
      const auto kernel = commutant(lefts, dims.n_s(), tol);
      if (kernel.empty()) {
        if (verify_case2_contradiction(sb, basis, dims, tol)) {
          throw DisintegrationFailure(
              "counterexample_state: NoLocal label contradicted, [A, B] (x) 1 is in the algebra");
        }
        return std::nullopt;
      }
      std::ostringstream os;
      os << "rho_S commutes with all " << lefts.size()
         << " left factors, so rho_S (x) 1/n_A is a fixed point of the dynamics";
      return Counterexample{shifted_mixed_state(kernel.front()), os.str()};
    }
  }
  return std::nullopt;
}

namespace {

std::vector<SeedVerdict> generic_verdicts(const LieBasis<double>& basis, const BipartiteDims& dims,
                                          const DensityMatrix<double>& rho_a,
                                          const AnalysisOptions& options) {
  std::vector<SeedVerdict> out;
  for (const auto seed : options.seeds) {
    std::mt19937_64 rng(seed);
    const auto rho_s = random_density<double>(dims.n_s(), rng);
    out.push_back({seed, criterion_details(basis, dims, rho_s, rho_a, options.tol)});
  }
  return out;
}

bool all_hold(const std::vector<SeedVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const SeedVerdict& v) { return v.result.holds; });
}

bool seeds_agree(const std::vector<SeedVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(), [&](const SeedVerdict& v) {
    return v.result.holds == verdicts.front().result.holds;
  });
}

void require_seeds(const AnalysisOptions& options) {
  if (options.seeds.empty()) {
    throw ValidationError("analysis needs at least one seed for the generic rho_S");
  }
}

const char* kReachableNote =
    "reachable set taken as e^L; whether it equals e^L or is only dense in it is not resolved";

}  // namespace

Report check_equivalence(const IndirectProblem& p, const AnalysisOptions& options) {
  require_seeds(options);
  const auto& dims = p.dims();
  if (p.control_algebra().empty() ||
      static_cast<Eigen::Index>(lie_closure(p.control_algebra(), options.tol).dim()) !=
          dims.d_a()) {
    throw HypothesisViolation("control algebra does not generate su(n_A)");
  }

  Report report;
  report.dims = dims;
  report.tol = options.tol;
  report.ambient_dim = dims.n();
  const auto basis = lie_closure(build_generators(p), dims, options.tol, options.max_dim);
  report.algebra_dim = basis.dim();
  report.closure_depth = basis.depth_reached;
  report.completely_controllable = is_completely_controllable(basis, dims);

  const auto sb = disintegrate(basis, dims, options.tol);
  report.case_label = sb.case_label;
  BlockDims blocks{sb.local_a.size(), {}, sb.local_s.size()};
  for (const auto& block : sb.coupled) {
    blocks.coupled.push_back(block.left.size());
  }
  report.blocks = blocks;

  const auto mixed = DensityMatrix<double>::maximally_mixed(dims.n_a());
  const DensityMatrix<double>& rho_a = options.rho_a ? *options.rho_a : mixed;
  report.rho_a_maximally_mixed = rho_a.is_maximally_mixed(options.tol);
  report.mode = report.rho_a_maximally_mixed ? AnalysisMode::Equivalence : AnalysisMode::Exploratory;
  if (!report.rho_a_maximally_mixed) {
    report.rho_a = rho_a.matrix();
  }

  report.generic = generic_verdicts(basis, dims, rho_a, options);
  const bool generic_holds = all_hold(report.generic);
  if (!seeds_agree(report.generic)) {
    report.inconsistencies.push_back("criterion verdict differs across generic rho_S seeds");
  }

  bool counterexample_holds = true;
  if (sb.case_label != CaseLabel::FullLocal) {
    try {
      report.counterexample = counterexample_state(sb, basis, dims, options.tol);
    } catch (const DisintegrationFailure& e) {
      report.inconsistencies.push_back(e.what());
    }
    if (report.counterexample) {
      report.counterexample_result =
          criterion_details(basis, dims, report.counterexample->rho_s, mixed, options.tol);
      counterexample_holds = report.counterexample_result->holds;
    }
  }
  report.indirect_criterion_holds = generic_holds && counterexample_holds;

  const bool full_local = sb.case_label == CaseLabel::FullLocal;
  if (full_local != report.completely_controllable) {
    report.inconsistencies.push_back(
        "FullLocal case label disagrees with complete controllability (algebra dim " +
        std::to_string(report.algebra_dim) + ")");
  }
  if (report.completely_controllable && !generic_holds) {
    report.inconsistencies.push_back(
        "completely controllable but the criterion fails for a generic rho_S");
  }
  if (!full_local) {
    if (!report.counterexample) {
      report.inconsistencies.push_back("no counterexample state for case " +
                                       std::string(to_string(sb.case_label)));
    } else if (counterexample_holds) {
      report.inconsistencies.push_back(
          "criterion holds on the counterexample state with rho_A maximally mixed");
    }
  }
  if (report.mode == AnalysisMode::Exploratory) {
    report.notes.push_back(
        "rho_A is not maximally mixed: generic-state verdicts are exploratory and only the "
        "counterexample check uses the mixed state");
  }
  report.notes.push_back(kReachableNote);
  return report;
}

Report analyze(const IndirectProblem& p, const AnalysisOptions& options) {
  try {
    return check_equivalence(p, options);
  } catch (const HypothesisViolation& violation) {
    require_seeds(options);
    const auto& dims = p.dims();
    Report report;
    report.mode = AnalysisMode::CriterionOnly;
    report.dims = dims;
    report.tol = options.tol;
    report.ambient_dim = dims.n();
    const auto basis = lie_closure(build_generators(p), dims, options.tol, options.max_dim);
    report.algebra_dim = basis.dim();
    report.closure_depth = basis.depth_reached;
    report.completely_controllable = is_completely_controllable(basis, dims);
    const auto mixed = DensityMatrix<double>::maximally_mixed(dims.n_a());
    const DensityMatrix<double>& rho_a = options.rho_a ? *options.rho_a : mixed;
    report.rho_a_maximally_mixed = rho_a.is_maximally_mixed(options.tol);
    if (!report.rho_a_maximally_mixed) {
      report.rho_a = rho_a.matrix();
    }
    report.generic = generic_verdicts(basis, dims, rho_a, options);
    report.indirect_criterion_holds = all_hold(report.generic);
    if (!seeds_agree(report.generic)) {
      report.inconsistencies.push_back("criterion verdict differs across generic rho_S seeds");
    }
    if (report.completely_controllable && !report.indirect_criterion_holds) {
      report.inconsistencies.push_back(
          "completely controllable but the criterion fails for a generic rho_S");
    }
    report.notes.push_back(std::string("hypothesis violated: ") + violation.what() +
                           "; equivalence not asserted, criterion reported for generic states only");
    report.notes.push_back(kReachableNote);
    return report;
  }
}

}  // namespace indirect

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

#include "indirect/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace indirect::io {

namespace {

using InJson = nlohmann::json;

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

void require_keys(const InJson& obj, const std::string& ptr, const std::set<std::string>& allowed,
                  const std::vector<std::string>& required) {
  if (!obj.is_object()) {
    throw ProblemFileError(ptr.empty() ? "/" : ptr, "expected an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ProblemFileError(ptr + "/" + key, "unknown field");
    }
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) {
      throw ProblemFileError(ptr + "/" + key, "missing required field");
    }
  }
}

double parse_number(const InJson& j, const std::string& ptr) {
  if (!j.is_number()) {
    throw ProblemFileError(ptr, "expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ProblemFileError(ptr, "number is not finite");
  }
  return v;
}

ComplexMatrix parse_matrix(const InJson& j, const std::string& ptr, Eigen::Index n) {
  const std::string expect = "expected a " + std::to_string(n) + "x" + std::to_string(n) +
                             " matrix of [re, im] pairs";
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw ProblemFileError(ptr, expect);
  }
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    const std::string row_ptr = ptr + "/" + std::to_string(r);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ProblemFileError(row_ptr, expect);
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& entry = row[static_cast<std::size_t>(c)];
      const std::string entry_ptr = row_ptr + "/" + std::to_string(c);
      if (!entry.is_array() || entry.size() != 2) {
        throw ProblemFileError(entry_ptr, "complex entry must be exactly two numbers [re, im]");
      }
      m(r, c) = {parse_number(entry[0], entry_ptr + "/0"), parse_number(entry[1], entry_ptr + "/1")};
    }
  }
  return m;
}

ComplexMatrix parse_su(const InJson& j, const std::string& ptr, Eigen::Index n, double tol) {
  ComplexMatrix m = parse_matrix(j, ptr, n);
  if (!is_skew_hermitian(m, tol)) {
    throw ProblemFileError(ptr, "matrix is not skew-Hermitian");
  }
  if (!is_traceless(m, tol)) {
    throw ProblemFileError(ptr, "matrix is not traceless");
  }
  return m;
}

Eigen::Index parse_dim(const InJson& j, const std::string& ptr) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 2) {
    throw ProblemFileError(ptr, "dimension must be an integer >= 2");
  }
  return static_cast<Eigen::Index>(j.get<std::int64_t>());
}

InJson parse_json(std::string_view text) {
  try {
    return InJson::parse(text);
  } catch (const InJson::parse_error& e) {
    throw ProblemFileError(line_column(text, e.byte), "malformed JSON");
  }
}

void require_schema(const InJson& root) {
  const auto& v = root.at("schema_version");
  if (!v.is_number_integer() || v.get<std::int64_t>() != kSchemaVersion) {
    throw ProblemFileError("/schema_version",
                           "unsupported schema version (expected " +
                               std::to_string(kSchemaVersion) + ")");
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json dims_json(const BipartiteDims& dims) {
  return Json{{"n_s", dims.n_s()}, {"n_a", dims.n_a()}};
}

Json header(const ReportContext& ctx, const BipartiteDims& dims, double tol) {
  Json out;
  out["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
  out["command"] = ctx.command;
  out["input_digest"] = ctx.input_digest;
  out["name"] = ctx.name ? Json(*ctx.name) : Json(nullptr);
  out["dims"] = dims_json(dims);
  out["tolerances"] = Json{{"rank", tol}};
  return out;
}

Json blocks_json(const StructuredBasis& sb) {
  Json coupled = Json::array();
  for (const auto& block : sb.coupled) {
    coupled.push_back(block.left.size());
  }
  return Json{{"local_a", sb.local_a.size()},
              {"coupled", coupled},
              {"local_s", sb.local_s.size()},
              {"sum", sb.dim()}};
}

std::string summary_head(const ReportContext& ctx, const BipartiteDims& dims) {
  std::ostringstream os;
  os << kToolName << " " << ctx.command;
  if (ctx.name) {
    os << " [" << *ctx.name << "]";
  }
  os << "\n  dims: n_s=" << dims.n_s() << " n_a=" << dims.n_a() << " (n=" << dims.n() << ")\n";
  return os.str();
}

std::string blocks_line(const StructuredBasis& sb) {
  std::ostringstream os;
  os << "local_a=" << sb.local_a.size() << " coupled=[";
  for (std::size_t k = 0; k < sb.coupled.size(); ++k) {
    os << (k ? "," : "") << sb.coupled[k].left.size();
  }
  os << "] local_s=" << sb.local_s.size() << " sum=" << sb.dim();
  return os.str();
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ProblemFileError(path.string(), "cannot open file");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ProblemFile parse_problem(std::string_view text) {
  const InJson root = parse_json(text);
  require_keys(root, "",
               {"schema_version", "name", "dims", "K", "L", "couplings", "control_algebra",
                "tolerances", "seeds"},
               {"schema_version", "dims", "K", "L", "couplings", "control_algebra"});
  require_schema(root);

  std::optional<std::string> name;
  if (root.contains("name")) {
    if (!root["name"].is_string()) {
      throw ProblemFileError("/name", "expected a string");
    }
    name = root["name"].get<std::string>();
  }

  std::optional<double> tol_override;
  if (root.contains("tolerances")) {
    require_keys(root["tolerances"], "/tolerances", {"rank"}, {"rank"});
    const double t = parse_number(root["tolerances"]["rank"], "/tolerances/rank");
    if (t <= 0) {
      throw ProblemFileError("/tolerances/rank", "tolerance must be positive");
    }
    tol_override = t;
  }
  const double tol = tol_override.value_or(kDefaultTol);

  std::optional<std::vector<std::uint64_t>> seeds;
  if (root.contains("seeds")) {
    const auto& s = root["seeds"];
    if (!s.is_array() || s.empty()) {
      throw ProblemFileError("/seeds", "expected a non-empty array of integers");
    }
    seeds.emplace();
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (!s[k].is_number_unsigned()) {
        throw ProblemFileError("/seeds/" + std::to_string(k), "seed must be a non-negative integer");
      }
      seeds->push_back(s[k].get<std::uint64_t>());
    }
  }

  require_keys(root["dims"], "/dims", {"n_s", "n_a"}, {"n_s", "n_a"});
  const BipartiteDims dims(parse_dim(root["dims"]["n_s"], "/dims/n_s"),
                           parse_dim(root["dims"]["n_a"], "/dims/n_a"));

  ComplexMatrix drift_s = parse_su(root["K"], "/K", dims.n_s(), tol);
  ComplexMatrix drift_a = parse_su(root["L"], "/L", dims.n_a(), tol);

  const auto& cj = root["couplings"];
  if (!cj.is_array()) {
    throw ProblemFileError("/couplings", "expected an array");
  }
  if (cj.empty()) {
    throw ProblemFileError("/couplings", "at least one coupling (S, sigma) is required");
  }
  std::vector<Coupling> couplings;
  for (std::size_t k = 0; k < cj.size(); ++k) {
    const std::string ptr = "/couplings/" + std::to_string(k);
    require_keys(cj[k], ptr, {"S", "sigma"}, {"S", "sigma"});
    Coupling c{parse_su(cj[k]["S"], ptr + "/S", dims.n_s(), tol),
               parse_su(cj[k]["sigma"], ptr + "/sigma", dims.n_a(), tol)};
    if (c.left.norm() <= tol) {
      throw ProblemFileError(ptr + "/S", "coupling factor S is zero");
    }
    couplings.push_back(std::move(c));
  }

  const auto& bj = root["control_algebra"];
  if (!bj.is_array()) {
    throw ProblemFileError("/control_algebra", "expected an array of matrices");
  }
  std::vector<ComplexMatrix> control;
  for (std::size_t k = 0; k < bj.size(); ++k) {
    control.push_back(parse_su(bj[k], "/control_algebra/" + std::to_string(k), dims.n_a(), tol));
  }

  try {
    return ProblemFile{kSchemaVersion, name,
                       IndirectProblem(dims, std::move(drift_s), std::move(drift_a),
                                       std::move(couplings), std::move(control), tol),
                       tol_override, seeds};
  } catch (const ProblemFileError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ProblemFileError("/couplings", e.what());
  }
}

ProblemFile load_problem(const std::filesystem::path& path) {
  return parse_problem(read_file(path));
}

DensityMatrix<double> parse_density(std::string_view text, double tol) {
  const InJson root = parse_json(text);
  require_keys(root, "", {"schema_version", "rho"}, {"schema_version", "rho"});
  require_schema(root);
  const auto& rho = root["rho"];
  if (!rho.is_array() || rho.empty()) {
    throw ProblemFileError("/rho", "expected a square matrix of [re, im] pairs");
  }
  ComplexMatrix m = parse_matrix(rho, "/rho", static_cast<Eigen::Index>(rho.size()));
  try {
    return DensityMatrix<double>::from_matrix(std::move(m), tol);
  } catch (const ValidationError& e) {
    throw ProblemFileError("/rho", e.what());
  }
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json problem_to_json(const IndirectProblem& p, const std::optional<std::string>& name) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  if (name) {
    out["name"] = *name;
  }
  out["dims"] = dims_json(p.dims());
  out["K"] = matrix_to_json(p.drift_s());
  out["L"] = matrix_to_json(p.drift_a());
  Json couplings = Json::array();
  for (const auto& c : p.couplings()) {
    couplings.push_back(Json{{"S", matrix_to_json(c.left)}, {"sigma", matrix_to_json(c.right)}});
  }
  out["couplings"] = couplings;
  Json control = Json::array();
  for (const auto& b : p.control_algebra()) {
    control.push_back(matrix_to_json(b));
  }
  out["control_algebra"] = control;
  return out;
}

std::string digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  std::ostringstream os;
  os << "sha256:" << std::hex << std::setfill('0');
  for (unsigned int k = 0; k < len; ++k) {
    os << std::setw(2) << static_cast<int>(md[k]);
  }
  return os.str();
}

Json closure_report(const LieBasis<double>& basis, const BipartiteDims& dims,
                    const ReportContext& ctx) {
  Json out = header(ctx, dims, basis.tol);
  out["algebra_dim"] = basis.dim();
  out["ambient_dim"] = dims.n();
  out["su_dim"] = dims.n() * dims.n() - 1;
  out["closure_depth"] = basis.depth_reached;
  out["completely_controllable"] = is_completely_controllable(basis, dims);
  return out;
}

Json disintegrate_report(const LieBasis<double>& basis, const StructuredBasis& sb,
                         const ReportContext& ctx) {
  Json out = closure_report(basis, sb.dims, ctx);
  out["case_label"] = std::string(to_string(sb.case_label));
  out["blocks"] = blocks_json(sb);
  return out;
}

Json analysis_report(const Report& report, const ReportContext& ctx) {
  Json out = header(ctx, report.dims, report.tol);
  out["mode"] = std::string(to_string(report.mode));
  Json seeds = Json::array();
  for (const auto& v : report.generic) {
    seeds.push_back(v.seed);
  }
  out["seeds"] = seeds;
  out["algebra_dim"] = report.algebra_dim;
  out["ambient_dim"] = report.ambient_dim;
  out["su_dim"] = report.ambient_dim * report.ambient_dim - 1;
  out["closure_depth"] = report.closure_depth;
  out["completely_controllable"] = report.completely_controllable;
  out["case_label"] =
      report.case_label ? Json(std::string(to_string(*report.case_label))) : Json(nullptr);
  if (report.blocks) {
    Json coupled = Json::array();
    std::size_t sum = report.blocks->local_a + report.blocks->local_s;
    for (const auto c : report.blocks->coupled) {
      coupled.push_back(c);
      sum += c;
    }
    out["blocks"] = Json{{"local_a", report.blocks->local_a},
                         {"coupled", coupled},
                         {"local_s", report.blocks->local_s},
                         {"sum", sum}};
  } else {
    out["blocks"] = nullptr;
  }
  out["rho_a"] = report.rho_a ? matrix_to_json(*report.rho_a) : Json("mixed");
  Json generic = Json::array();
  for (const auto& v : report.generic) {
    generic.push_back(Json{{"seed", v.seed},
                           {"holds", v.result.holds},
                           {"observability_dim", v.result.observability_dim},
                           {"traced_dim", v.result.traced_dim}});
  }
  out["criterion"] = Json{{"holds", report.indirect_criterion_holds}, {"generic", generic}};
  if (report.counterexample) {
    Json ce{{"rho_s", matrix_to_json(report.counterexample->rho_s.matrix())},
            {"explanation", report.counterexample->explanation}};
    if (report.counterexample_result) {
      ce["holds"] = report.counterexample_result->holds;
      ce["observability_dim"] = report.counterexample_result->observability_dim;
      ce["traced_dim"] = report.counterexample_result->traced_dim;
    }
    out["counterexample"] = ce;
  } else {
    out["counterexample"] = nullptr;
  }
  out["notes"] = report.notes;
  out["inconsistencies"] = report.inconsistencies;
  return out;
}

std::string closure_summary(const LieBasis<double>& basis, const BipartiteDims& dims,
                            const ReportContext& ctx) {
  std::ostringstream os;
  os << summary_head(ctx, dims);
  os << "  algebra: dim " << basis.dim() << " of su(" << dims.n() << ") = "
     << dims.n() * dims.n() - 1 << ", closure depth " << basis.depth_reached << "\n";
  os << "  completely controllable: " << yes_no(is_completely_controllable(basis, dims)) << "\n";
  return os.str();
}

std::string disintegrate_summary(const LieBasis<double>& basis, const StructuredBasis& sb,
                                 const ReportContext& ctx) {
  std::ostringstream os;
  os << closure_summary(basis, sb.dims, ctx);
  os << "  blocks: " << blocks_line(sb) << " (algebra dim " << basis.dim() << ")\n";
  os << "  case: " << to_string(sb.case_label) << "\n";
  return os.str();
}

std::string analysis_summary(const Report& report, const ReportContext& ctx) {
  std::ostringstream os;
  os << summary_head(ctx, report.dims);
  os << "  mode: " << to_string(report.mode) << "\n";
  os << "  algebra: dim " << report.algebra_dim << " of su(" << report.ambient_dim
     << ") = " << report.ambient_dim * report.ambient_dim - 1 << ", closure depth "
     << report.closure_depth << "\n";
  os << "  completely controllable: " << yes_no(report.completely_controllable) << "\n";
  if (report.case_label) {
    os << "  case: " << to_string(*report.case_label);
    if (report.blocks) {
      os << " (local_a=" << report.blocks->local_a << " local_s=" << report.blocks->local_s
         << ")";
    }
    os << "\n";
  }
  os << "  rho_A: " << (report.rho_a_maximally_mixed ? "maximally mixed" : "user-supplied")
     << "\n";
  for (const auto& v : report.generic) {
    os << "  generic rho_S (seed " << v.seed << "): criterion "
       << (v.result.holds ? "holds" : "fails") << " (dim V = " << v.result.observability_dim
       << ", dim Tr_A(V) + i1 = " << v.result.traced_dim << " of "
       << report.dims.n_s() * report.dims.n_s() << ")\n";
  }
  if (report.counterexample) {
    os << "  counterexample: " << report.counterexample->explanation << "\n";
    if (report.counterexample_result) {
      os << "    criterion on it: " << (report.counterexample_result->holds ? "holds" : "fails")
         << " (dim Tr_A(V) + i1 = " << report.counterexample_result->traced_dim << ")\n";
    }
  }
  os << "  criterion over all tested states: "
     << (report.indirect_criterion_holds ? "holds" : "fails") << "\n";
  for (const auto& note : report.notes) {
    os << "  note: " << note << "\n";
  }
  if (report.inconsistencies.empty()) {
    os << "  consistency: ok\n";
  } else {
    for (const auto& issue : report.inconsistencies) {
      os << "  INCONSISTENT: " << issue << "\n";
    }
  }
  return os.str();
}

}  // namespace indirect::io

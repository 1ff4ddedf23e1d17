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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "indirect/controllability.hpp"

namespace indirect::io {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolName = "indirectctl";
inline constexpr std::string_view kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Parse or validation failure with a locator: "line L, column C" for
/// syntax errors, a JSON pointer such as "/couplings/0/S/1/0" otherwise.
class ProblemFileError : public ValidationError {
 public:
  ProblemFileError(std::string locator, const std::string& message)
      : ValidationError(locator + ": " + message), locator_(std::move(locator)) {}

  const std::string& locator() const { return locator_; }

 private:
  std::string locator_;
};

struct ProblemFile {
  int schema_version = kSchemaVersion;
  std::optional<std::string> name;
  IndirectProblem problem;
  std::optional<double> tol;
  std::optional<std::vector<std::uint64_t>> seeds;
};

ProblemFile parse_problem(std::string_view text);

/// Reads and parses; I/O failures are reported as ProblemFileError too.
ProblemFile load_problem(const std::filesystem::path& path);

/// Density matrix file: {"schema_version": 1, "rho": <matrix>}.
DensityMatrix<double> parse_density(std::string_view text, double tol = kDefaultTol);

/// Rows of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);

Json problem_to_json(const IndirectProblem& p, const std::optional<std::string>& name = {});

std::string read_file(const std::filesystem::path& path);

/// "sha256:<hex>" of the raw input bytes.
std::string digest(std::string_view bytes);

struct ReportContext {
  std::string command;
  std::string input_digest;
  std::optional<std::string> name;
};

Json closure_report(const LieBasis<double>& basis, const BipartiteDims& dims,
                    const ReportContext& ctx);

Json disintegrate_report(const LieBasis<double>& basis, const StructuredBasis& sb,
                         const ReportContext& ctx);

Json analysis_report(const Report& report, const ReportContext& ctx);

std::string closure_summary(const LieBasis<double>& basis, const BipartiteDims& dims,
                            const ReportContext& ctx);

std::string disintegrate_summary(const LieBasis<double>& basis, const StructuredBasis& sb,
                                 const ReportContext& ctx);

std::string analysis_summary(const Report& report, const ReportContext& ctx);

}  // namespace indirect::io

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

// indirectctl: batch front end for the indirect-controllability analysis.
//
// Exit codes: 0 success, 2 validation failure, 3 closure dimension cap hit,
// 4 computed results disagree with the theorem's predictions.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "indirect/controllability.hpp"
#include "indirect/io.hpp"
#include "indirect/systems.hpp"

namespace {

using indirect::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitInconsistent = 4;

struct CommonFlags {
  std::string input;
  std::optional<double> tol;
  std::optional<std::size_t> max_dim;
  std::string format = "text";
  std::string output;
};

struct Loaded {
  indirect::io::ProblemFile file;
  indirect::io::ReportContext ctx;
  double tol;
};

Loaded load(const CommonFlags& flags, const std::string& command) {
  const std::string bytes = indirect::io::read_file(flags.input);
  auto file = indirect::io::parse_problem(bytes);
  const double tol = flags.tol.value_or(file.tol.value_or(indirect::kDefaultTol));
  indirect::io::ReportContext ctx{command, indirect::io::digest(bytes), file.name};
  return {std::move(file), std::move(ctx), tol};
}

void emit(const CommonFlags& flags, const Json& report, const std::string& summary) {
  const std::string machine = report.dump(2) + "\n";
  if (!flags.output.empty()) {
    std::ofstream out(flags.output, std::ios::binary);
    if (!out) {
      throw indirect::ValidationError("cannot write report to " + flags.output);
    }
    out << machine;
  }
  std::cout << (flags.format == "machine" ? machine : summary);
}

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("input", flags.input, "problem file (JSON)")->required();
  cmd->add_option("--tol", flags.tol, "relative rank tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-dim", flags.max_dim, "cap on the algebra dimension");
  cmd->add_option("--format", flags.format, "stdout format")
      ->check(CLI::IsMember({"text", "machine"}));
  cmd->add_option("--output", flags.output, "also write the machine report to this path");
}

int run_closure(const CommonFlags& flags) {
  const auto loaded = load(flags, "closure");
  const auto& p = loaded.file.problem;
  const auto basis =
      indirect::lie_closure(indirect::build_generators(p), p.dims(), loaded.tol, flags.max_dim);
  emit(flags, indirect::io::closure_report(basis, p.dims(), loaded.ctx),
       indirect::io::closure_summary(basis, p.dims(), loaded.ctx));
  return kExitOk;
}

int run_disintegrate(const CommonFlags& flags) {
  const auto loaded = load(flags, "disintegrate");
  const auto& p = loaded.file.problem;
  const auto basis =
      indirect::lie_closure(indirect::build_generators(p), p.dims(), loaded.tol, flags.max_dim);
  const auto sb = indirect::disintegrate(basis, p.dims(), loaded.tol);
  emit(flags, indirect::io::disintegrate_report(basis, sb, loaded.ctx),
       indirect::io::disintegrate_summary(basis, sb, loaded.ctx));
  return kExitOk;
}

int run_analyze(const CommonFlags& flags, const std::optional<std::uint64_t>& seed,
                const std::string& rho_a) {
  const auto loaded = load(flags, "analyze");
  const auto& p = loaded.file.problem;
  indirect::AnalysisOptions options;
  options.tol = loaded.tol;
  options.max_dim = flags.max_dim;
  if (seed) {
    options.seeds = {*seed, *seed + 1, *seed + 2};
  } else if (loaded.file.seeds) {
    options.seeds = *loaded.file.seeds;
  }
  if (rho_a != "mixed") {
    auto state = indirect::io::parse_density(indirect::io::read_file(rho_a), loaded.tol);
    if (state.dim() != p.dims().n_a()) {
      throw indirect::ValidationError("--rho-a: state is " + std::to_string(state.dim()) +
                                      "-dimensional, n_a = " + std::to_string(p.dims().n_a()));
    }
    options.rho_a = std::move(state);
  }
  const auto report = indirect::analyze(p, options);
  emit(flags, indirect::io::analysis_report(report, loaded.ctx),
       indirect::io::analysis_summary(report, loaded.ctx));
  return report.inconsistencies.empty() ? kExitOk : kExitInconsistent;
}

int run_model(const std::string& name, bool list) {
  if (list || name.empty()) {
    for (const auto& spec : indirect::all_examples()) {
      std::cout << spec.name << "\n";
    }
    return kExitOk;
  }
  const auto spec = indirect::example_by_name(name);
  std::cout << indirect::io::problem_to_json(spec.problem, spec.name).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-algebraic analysis of indirectly controlled bipartite quantum systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(indirect::io::kToolVersion));

  CommonFlags closure_flags;
  auto* closure = app.add_subcommand("closure", "dynamical Lie algebra dimension and depth");
  add_common(closure, closure_flags);

  CommonFlags analyze_flags;
  std::optional<std::uint64_t> seed;
  std::string rho_a = "mixed";
  auto* analyze = app.add_subcommand("analyze", "full equivalence check and report");
  add_common(analyze, analyze_flags);
  analyze->add_option("--seed", seed, "base seed; generic states use seed, seed+1, seed+2");
  analyze->add_option("--rho-a", rho_a, "'mixed' or a density-matrix file for the auxiliary");

  CommonFlags disintegrate_flags;
  auto* disintegrate =
      app.add_subcommand("disintegrate", "tensor-product block structure and case label");
  add_common(disintegrate, disintegrate_flags);

  std::string model_name;
  bool list = false;
  auto* model = app.add_subcommand("model", "print a built-in example as a problem file");
  model->add_option("name", model_name, "example name");
  model->add_flag("--list", list, "list example names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*closure) {
      return run_closure(closure_flags);
    }
    if (*analyze) {
      return run_analyze(analyze_flags, seed, rho_a);
    }
    if (*disintegrate) {
      return run_disintegrate(disintegrate_flags);
    }
    return run_model(model_name, list);
  } catch (const indirect::ClosureCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const indirect::DisintegrationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const indirect::HypothesisViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

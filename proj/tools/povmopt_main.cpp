// Copyright 2026 The povmopt Authors
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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "povmopt/cli/commands.hpp"

namespace {

using povmopt::cli::CommandResult;
using povmopt::cli::Json;

struct Common {
  povmopt::cli::RunOptions run;
  std::string output;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--tol-gap", c.run.solver.gap_tol, "Relative duality-gap tolerance")->capture_default_str();
  sub->add_option("--tol-feas", c.run.solver.feas_tol, "Feasibility tolerance")->capture_default_str();
  sub->add_option("--max-iters", c.run.solver.max_iters, "Interior-point iteration limit")->capture_default_str();
  sub->add_option("--seed", c.run.seed, "Seed for every random draw")->capture_default_str();
  sub->add_option("--jobs", c.run.jobs, "Worker threads for directory inputs")->check(CLI::PositiveNumber);
  sub->add_option("--output", c.output, "Write the report here instead of stdout");
}

int emit(const CommandResult& r, const std::string& output) {
  const std::string text = r.report.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "povmopt: cannot write " << output << "\n";
      return povmopt::cli::kExitParse;
    }
    out << text;
  }
  if (r.report.is_object() && r.report.contains("summary")) {
    std::cerr << r.report["summary"].get<std::string>() << "\n";
  }
  return r.exit_code;
}

std::string slurp_or_fail(const std::string& path) { return povmopt::cli::read_file(path); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"povmopt: optimal quantum measurements with certificates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(povmopt::cli::kFormatVersion));

  Common common;

  std::string problem_path;
  std::string solution_path;

  auto* solve = app.add_subcommand("solve", "Solve a primal problem file or a directory of them");
  solve->add_option("problem", problem_path, "Problem file or directory")->required();
  add_common(solve, common);

  auto* minimax = app.add_subcommand("minimax", "Solve a minimax problem file or a directory of them");
  minimax->add_option("problem", problem_path, "Problem file or directory")->required();
  add_common(minimax, common);

  auto* certify = app.add_subcommand("certify", "Check a solution against a problem without solving");
  certify->add_option("problem", problem_path, "Problem file")->required();
  certify->add_option("solution", solution_path, "Solution or report file")->required();
  certify->add_option("--tol-cert", common.run.certificate.dual_feasibility, "Certificate tolerance");
  add_common(certify, common);

  auto* symmetrize = app.add_subcommand("symmetrize", "Group-average a solution and re-certify it");
  symmetrize->add_option("problem", problem_path, "Problem file with a group block")->required();
  symmetrize->add_option("solution", solution_path, "Solution file; solved first when omitted");
  add_common(symmetrize, common);

  povmopt::cli::TemplateSpec spec;
  std::vector<std::string> ensemble_paths;
  std::string random_spec;
  std::string costs_path;
  int set_count = 1;
  std::optional<double> epsilon;
  std::optional<double> p;
  std::optional<double> q;
  auto* templ = app.add_subcommand("template", "Emit a canonical problem file from a named template");
  templ->add_option("name", spec.name, "Template name")->required();
  templ->add_option("--ensemble", ensemble_paths, "Ensemble file (repeat for plural-minimax sets)");
  templ->add_option("--random", random_spec, "Random ensemble d:R[:mixed]");
  templ->add_option("--count", set_count, "Number of random sets for plural-minimax")->check(CLI::PositiveNumber);
  templ->add_option("--costs", costs_path, "File holding a real cost matrix");
  templ->add_option("--epsilon", epsilon, "Error margin");
  templ->add_option("--p", p, "Failure-probability bound");
  templ->add_option("--q", q, "Per-state success bound");
  add_common(templ, common);

  CLI11_PARSE(app, argc, argv);
  common.run.certificate.operator_slackness = common.run.certificate.dual_feasibility;
  common.run.certificate.scalar_slackness = common.run.certificate.dual_feasibility;
  common.run.certificate.primal_feasibility = common.run.certificate.dual_feasibility;

  CommandResult result;
  try {
    if (solve->parsed()) {
      result = povmopt::cli::run_path("solve", problem_path, common.run);
    } else if (minimax->parsed()) {
      result = povmopt::cli::run_path("minimax", problem_path, common.run);
    } else if (certify->parsed()) {
      const std::string problem = slurp_or_fail(problem_path);
      const std::string solution = slurp_or_fail(solution_path);
      result = povmopt::cli::cmd_certify(problem, problem_path, solution, solution_path, common.run);
    } else if (symmetrize->parsed()) {
      const std::string problem = slurp_or_fail(problem_path);
      if (solution_path.empty()) {
        result = povmopt::cli::cmd_symmetrize(problem, problem_path, std::nullopt, common.run);
      } else {
        const std::string solution = slurp_or_fail(solution_path);
        result = povmopt::cli::cmd_symmetrize(problem, problem_path, solution, common.run);
      }
    } else if (templ->parsed()) {
      if (epsilon) spec.parameters["epsilon"] = *epsilon;
      if (p) spec.parameters["p"] = *p;
      if (q) spec.parameters["q"] = *q;
      if (!costs_path.empty()) {
        const Json costs = povmopt::cli::parse_text(slurp_or_fail(costs_path), costs_path);
        spec.parameters["costs"] = costs.is_object() && costs.contains("costs") ? costs["costs"] : costs;
      }
      std::vector<povmopt::StateEnsemble> ensembles;
      for (const auto& path : ensemble_paths) {
        ensembles.push_back(
            povmopt::cli::ensemble_from_json(povmopt::cli::parse_text(slurp_or_fail(path), path), path));
      }
      if (!random_spec.empty()) {
        for (int k = 0; k < set_count; ++k) {
          ensembles.push_back(povmopt::cli::random_ensemble_from_spec(
              random_spec, common.run.seed + static_cast<std::uint64_t>(k)));
        }
      }
      if (spec.name == "plural-minimax") {
        spec.sets = std::move(ensembles);
      } else if (ensembles.size() == 1) {
        spec.ensemble = std::move(ensembles.front());
      } else if (ensembles.size() > 1) {
        throw povmopt::cli::ParseError("template '" + spec.name + "' takes exactly one ensemble", "--ensemble");
      }
      result = povmopt::cli::cmd_template(spec, common.run);
    }
  } catch (const povmopt::cli::ParseError& e) {
    std::cerr << "povmopt: " << e.what() << "\n";
    return povmopt::cli::kExitParse;
  } catch (const povmopt::Error& e) {
    std::cerr << "povmopt: " << e.what() << "\n";
    return povmopt::cli::kExitParse;
  }
  return emit(result, common.output);
}

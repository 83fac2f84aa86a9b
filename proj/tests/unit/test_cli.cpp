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


#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "povmopt/cli/commands.hpp"

namespace povmopt::cli {
namespace {

std::string fixture(const std::string& name) { return read_file(std::string(POVMOPT_FIXTURES) + "/" + name); }

CommandResult solve_fixture(const std::string& name) { return cmd_solve(fixture(name), name, {}); }

Json without_timings(Json report) {
  report.erase("timings");
  return report;
}

TEST(ProblemFile, CanonicalRoundTripIsExact) {
  for (const char* name : {"helstrom.json", "equality_rows.json", "minimax_k1.json", "trine_z3.json",
                           "unambiguous.json", "plural_identical.json"}) {
    const Json once = problem_to_json(parse_problem(fixture(name), name));
    const Json twice = problem_to_json(parse_problem(once.dump(), "canonical"));
    EXPECT_EQ(once.dump(), twice.dump()) << name;
  }
}

TEST(ProblemFile, MatrixPrintingIsRoundTripExact) {
  ComplexMatrix m(2, 2);
  m << Complex(0.1, 1.0 / 3.0), Complex(std::sqrt(2.0), -1e-300), Complex(M_PI, 0.0), Complex(-7e-17, 5.0);
  const ComplexMatrix back = matrix_from_json(parse_text(matrix_to_json(m).dump(), "m"), "/m");
  EXPECT_EQ(back, m);
}

TEST(ProblemFile, ParsePrimalAndMinimaxKinds) {
  const auto p = parse_problem(fixture("helstrom.json"));
  EXPECT_EQ(p.kind, ProblemKind::Primal);
  ASSERT_TRUE(p.primal.has_value());
  EXPECT_EQ(p.dim(), 2);
  const auto m = parse_problem(fixture("minimax_k1.json"));
  EXPECT_EQ(m.kind, ProblemKind::Minimax);
  ASSERT_TRUE(m.minimax.has_value());
  EXPECT_EQ(m.minimax->criteria(), 1);
}

TEST(ProblemFile, GroupBlockParses) {
  const auto f = parse_problem(fixture("trine_z3.json"));
  ASSERT_TRUE(f.group.has_value());
  EXPECT_EQ(f.group->size(), 3);
  const Json g = group_to_json(*f.group);
  const auto again = group_from_json(g, "/group", 2, 3, 0, std::nullopt);
  EXPECT_EQ(again.size(), 3);
}

TEST(ProblemFile, SyntaxErrorCarriesLine) {
  try {
    parse_problem(fixture("malformed.json"), "malformed.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 0);
  }
}

TEST(ProblemFile, NonHermitianNamesField) {
  try {
    parse_problem(fixture("nonhermitian.json"), "nonhermitian.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_FALSE(e.field().empty());
  }
}

TEST(ProblemFile, RejectsWrongVersionAndShape) {
  EXPECT_THROW(parse_problem(R"({"version": "other/9", "kind": "primal"})"), ParseError);
  EXPECT_THROW(parse_problem(R"({"version": "povmopt/1", "kind": "primal", "dimension": 2,
                               "objective": [[[1, 0]]]})"),
               ParseError);
  EXPECT_THROW(parse_problem(R"({"version": "povmopt/1", "template": {"name": "nope"}})"), ParseError);
}

TEST(ProblemFile, DigestIsStable) {
  EXPECT_EQ(digest("abc"), digest("abc"));
  EXPECT_NE(digest("abc"), digest("abd"));
}

TEST(Solve, HelstromFile) {
  const auto r = solve_fixture("helstrom.json");
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_NEAR(r.report["metrics"]["success_probability"].get<double>(), 0.8535534, 1e-6);
  EXPECT_TRUE(r.report["certificate"]["passed"].get<bool>());
  EXPECT_EQ(r.report["input"]["digest"], digest(fixture("helstrom.json")));
}

TEST(Solve, OrthogonalFileHasUnitValue) {
  const auto r = solve_fixture("orthogonal.json");
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_NEAR(r.report["metrics"]["success_probability"].get<double>(), 1.0, 1e-7);
}

TEST(Solve, ImpossibleBoundIsInfeasible) {
  const auto r = solve_fixture("impossible_q.json");
  EXPECT_EQ(r.exit_code, kExitInfeasible);
  EXPECT_EQ(r.report["status"], "infeasible");
  EXPECT_TRUE(r.report.contains("infeasibility"));
}

TEST(Solve, ParseFailuresExitOne) {
  for (const char* name : {"malformed.json", "nonhermitian.json"}) {
    const auto r = solve_fixture(name);
    EXPECT_EQ(r.exit_code, kExitParse) << name;
    EXPECT_EQ(r.report["status"], "error");
    EXPECT_EQ(r.report["error"]["type"], "parse_error");
  }
}

TEST(Solve, WrongKindIsParseError) {
  EXPECT_EQ(solve_fixture("minimax_k1.json").exit_code, kExitParse);
  EXPECT_EQ(cmd_minimax(fixture("helstrom.json"), "helstrom.json", {}).exit_code, kExitParse);
}

TEST(Solve, RerunIsBitwiseReproducible) {
  const auto a = solve_fixture("equality_rows.json");
  const auto b = solve_fixture("equality_rows.json");
  EXPECT_EQ(a.exit_code, kExitOk);
  EXPECT_EQ(without_timings(a.report).dump(), without_timings(b.report).dump());
}

TEST(Solve, ConfigIsEchoed) {
  RunOptions opt;
  opt.solver.max_iters = 77;
  opt.seed = 4;
  const auto r = cmd_solve(fixture("helstrom.json"), "h", opt);
  EXPECT_EQ(r.report["config"]["max_iters"], 77);
  EXPECT_EQ(r.report["config"]["seed"], 4);
}

TEST(Minimax, SwapFileEqualizes) {
  const auto r = cmd_minimax(fixture("minimax_swap.json"), "swap", {});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_NEAR(r.report["mu"][0].get<double>(), 0.5, 1e-4);
  EXPECT_NEAR(r.report["mu"][1].get<double>(), 0.5, 1e-4);
}

TEST(Minimax, SingleCriterionMatchesSolve) {
  const auto mm = cmd_minimax(fixture("minimax_k1.json"), "k1", {});
  const auto pr = solve_fixture("primal_k1.json");
  ASSERT_EQ(mm.exit_code, kExitOk);
  ASSERT_EQ(pr.exit_code, kExitOk);
  EXPECT_NEAR(mm.report["value"].get<double>(), pr.report["primal_value"].get<double>(), 1e-8);
}

TEST(Minimax, IdenticalPluralSets) {
  const auto r = cmd_minimax(fixture("plural_identical.json"), "plural", {});
  ASSERT_EQ(r.exit_code, kExitOk);
  const double helstrom = 0.5 * (1.0 + std::sqrt(0.5));
  EXPECT_NEAR(r.report["value"].get<double>(), helstrom, 1e-6);
}

TEST(Certify, AnalyticOrthogonalCertificate) {
  const auto r = cmd_certify(fixture("orthogonal_raw.json"), "raw", fixture("orthogonal_certificate.json"),
                             "cert", {});
  EXPECT_EQ(r.exit_code, kExitOk) << r.report.dump();
}

TEST(Certify, SolverOutputRoundTrips) {
  const auto solved = solve_fixture("helstrom.json");
  ASSERT_EQ(solved.exit_code, kExitOk);
  const auto r = cmd_certify(fixture("helstrom.json"), "h", solved.report.dump(), "report", {});
  EXPECT_EQ(r.exit_code, kExitOk) << r.report.dump();
}

TEST(Certify, LambdaOnlyBuildsCertificate) {
  const auto solved = solve_fixture("helstrom.json");
  Json sol = Json::object();
  sol["povm"] = solved.report["povm"];
  sol["dual"] = Json::object({{"lambda", solved.report["dual"]["lambda"]}});
  const auto r = cmd_certify(fixture("helstrom.json"), "h", sol.dump(), "sol", {});
  EXPECT_EQ(r.exit_code, kExitOk) << r.report.dump();
}

TEST(Certify, PerturbedPovmFailsWithNamedCondition) {
  const auto file = parse_problem(fixture("helstrom.json"));
  const auto solved = solve(*file.primal);
  ASSERT_EQ(solved.status, SolverStatus::Optimal);
  // Scale outcome 0 by 0.9 and dump the remainder into outcome 1.
  std::vector<HermitianOperator> ops{solved.povm[0] * 0.9, solved.povm[1] + solved.povm[0] * 0.1};
  Json sol = Json::object();
  Json povm = Json::array();
  for (const auto& op : ops) povm.push_back(matrix_to_json(op.matrix()));
  sol["povm"] = povm;
  sol["dual"] = Json::object({{"X", matrix_to_json(solved.dual.X.matrix())}, {"lambda", solved.dual.lambda}});
  const auto r = cmd_certify(fixture("helstrom.json"), "h", sol.dump(), "sol", {});
  EXPECT_EQ(r.exit_code, kExitCertificate);
  ASSERT_TRUE(r.report.contains("certificate"));
  EXPECT_FALSE(r.report["certificate"]["failures"].empty());
}

TEST(Certify, ShapeMismatchExitsOne) {
  Json bad = parse_text(fixture("orthogonal_certificate.json"), "c");
  bad["povm"].erase(bad["povm"].begin());
  EXPECT_EQ(cmd_certify(fixture("helstrom.json"), "h", bad.dump(), "c", {}).exit_code, kExitParse);
}

TEST(Template, ErrorMarginShape) {
  TemplateSpec spec;
  spec.name = "error-margin";
  spec.parameters = Json::object({{"epsilon", 0.1}});
  spec.ensemble = random_ensemble_from_spec("2:2", 0);
  const auto r = cmd_template(spec, {});
  ASSERT_EQ(r.exit_code, kExitOk);
  ASSERT_EQ(r.report["constraints"].size(), 1u);
  EXPECT_NEAR(r.report["constraints"][0]["bound"].get<double>(), -0.9, 1e-15);
}

TEST(Template, BoundedInconclusiveShape) {
  TemplateSpec spec;
  spec.name = "bounded-inconclusive";
  spec.parameters = Json::object({{"p", 0.2}, {"q", 0.0}});
  spec.ensemble = random_ensemble_from_spec("2:2", 1);
  const auto f = expand_template(spec);
  ASSERT_TRUE(f.primal.has_value());
  EXPECT_EQ(f.primal->outcomes(), 3);
  EXPECT_EQ(f.primal->constraints(), 3);
}

TEST(Template, PluralMinimaxHasNoConstraints) {
  TemplateSpec spec;
  spec.name = "plural-minimax";
  spec.sets = {random_ensemble_from_spec("2:2", 1), random_ensemble_from_spec("2:2", 2)};
  const auto f = expand_template(spec);
  ASSERT_EQ(f.kind, ProblemKind::Minimax);
  EXPECT_EQ(f.minimax->criteria(), 2);
  EXPECT_EQ(f.minimax->constraints(), 0);
}

TEST(Template, OutputParsesBack) {
  for (const auto& name : template_names()) {
    TemplateSpec spec;
    spec.name = name;
    spec.parameters = Json::object({{"epsilon", 0.1}, {"p", 0.1}, {"q", 0.0}});
    if (name == "plural-minimax") {
      spec.sets = {random_ensemble_from_spec("2:2", 1), random_ensemble_from_spec("2:2", 2)};
    } else {
      spec.ensemble = random_ensemble_from_spec("2:2", 3);
    }
    const auto r = cmd_template(spec, {});
    ASSERT_EQ(r.exit_code, kExitOk) << name << ": " << r.report.dump();
    EXPECT_NO_THROW(parse_problem(r.report.dump(), name)) << name;
  }
}

TEST(Template, UnknownNameAndBadParameters) {
  TemplateSpec spec;
  spec.name = "nope";
  spec.ensemble = random_ensemble_from_spec("2:2", 0);
  EXPECT_EQ(cmd_template(spec, {}).exit_code, kExitParse);
  spec.name = "error-margin";
  spec.parameters = Json::object({{"epsilon", 1.5}});
  EXPECT_EQ(cmd_template(spec, {}).exit_code, kExitParse);
}

TEST(Template, RandomSpecIsSeeded) {
  const auto a = random_ensemble_from_spec("3:2:mixed", 9);
  const auto b = random_ensemble_from_spec("3:2:mixed", 9);
  const auto c = random_ensemble_from_spec("3:2:mixed", 10);
  EXPECT_EQ(a.dim(), 3);
  EXPECT_EQ(a.size(), 2);
  EXPECT_EQ(distance(a.state(0).op(), b.state(0).op()), 0.0);
  EXPECT_GT(distance(a.state(0).op(), c.state(0).op()), 0.0);
  for (const char* bad : {"3", "3:x", "3:2:odd", "3:2:mixed:1", "2.5:2"}) {
    EXPECT_THROW(random_ensemble_from_spec(bad, 0), ParseError) << bad;
  }
}

TEST(Symmetrize, TrineNeedsNoChange) {
  const auto r = cmd_symmetrize(fixture("trine_z3.json"), "trine", std::nullopt, {});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_NEAR(r.report["objective_after"].get<double>(), r.report["objective_before"].get<double>(), 1e-8);
  EXPECT_LE(r.report["povm_covariance_residual"].get<double>(), 1e-9);
}

TEST(Symmetrize, TrivialGroup) {
  const auto r = cmd_symmetrize(fixture("trine_trivial.json"), "trivial", std::nullopt, {});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.report["objective_after"], r.report["objective_before"]);
}

TEST(Symmetrize, WrongPermutationExitsFive) {
  const auto r = cmd_symmetrize(fixture("trine_bad_perm.json"), "bad", std::nullopt, {});
  EXPECT_EQ(r.exit_code, kExitCovariance);
  EXPECT_NE(r.report["summary"].get<std::string>().find("m="), std::string::npos);
}

TEST(Symmetrize, SuppliedSolutionIsAveraged) {
  const auto solved = solve_fixture("trine_z3.json");
  ASSERT_EQ(solved.exit_code, kExitOk);
  const std::string text = solved.report.dump();
  const auto r = cmd_symmetrize(fixture("trine_z3.json"), "trine", std::string_view(text), {});
  EXPECT_EQ(r.exit_code, kExitOk) << r.report.dump();
}

TEST(Symmetrize, MissingGroupIsParseError) {
  EXPECT_EQ(cmd_symmetrize(fixture("helstrom.json"), "h", std::nullopt, {}).exit_code, kExitParse);
}

}  // namespace
}  // namespace povmopt::cli

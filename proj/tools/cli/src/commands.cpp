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

#include "povmopt/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <thread>

namespace povmopt::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json new_report(const std::string& command) {
  Json j = Json::object();
  j["summary"] = "";
  j["version"] = kFormatVersion;
  j["command"] = command;
  return j;
}

Json input_json(std::string_view text, const std::string& source) {
  Json j = Json::object();
  j["path"] = source;
  j["digest"] = digest(text);
  return j;
}

Json config_json(const RunOptions& o) {
  Json j = Json::object();
  j["tol_gap"] = o.solver.gap_tol;
  j["tol_feas"] = o.solver.feas_tol;
  j["max_iters"] = o.solver.max_iters;
  j["step_fraction"] = o.solver.step_fraction;
  j["seed"] = o.seed;
  j["jobs"] = o.jobs;
  return j;
}

Json povm_json(const Povm& povm) {
  Json j = Json::array();
  for (const auto& p : povm.outcomes()) j.push_back(matrix_to_json(p.matrix()));
  return j;
}

Json dual_json(const DualCertificate& d, const std::vector<ComplexMatrix>& faces) {
  Json j = Json::object();
  j["X"] = matrix_to_json(d.X.matrix());
  j["lambda"] = d.lambda;
  if (!faces.empty()) {
    Json f = Json::array();
    for (const auto& v : faces) f.push_back(v.cols() == 0 ? Json::array() : matrix_to_json(v));
    j["faces"] = std::move(f);
  }
  return j;
}

Json certificate_json(const CertificateReport& c) {
  Json j = Json::object();
  j["passed"] = c.passed();
  j["failures"] = c.failures();
  j["scope"] = c.face_restricted ? "face" : "full";
  j["dual_feasibility"] = c.dual_feas_residual;
  j["operator_slackness"] = c.comp_slack_operator;
  j["scalar_slackness"] = c.comp_slack_scalar;
  j["gap"] = number_or_null(c.gap);
  j["primal_value"] = c.primal_value;
  j["dual_value"] = number_or_null(c.dual_value);
  j["worst_dual_outcome"] = c.worst_dual_outcome;
  j["worst_operator_outcome"] = c.worst_operator_outcome;
  j["worst_scalar_row"] = c.worst_scalar_row;
  j["lambda_nonnegative"] = c.lambda_nonnegative;
  j["primal_feasible"] = c.primal_feasible_ok;
  j["povm_min_eigenvalue"] = c.feasibility.povm.min_eigenvalue;
  j["povm_completeness"] = c.feasibility.povm.completeness;
  j["constraint_slacks"] = c.feasibility.slacks;
  j["violated_rows"] = c.feasibility.violated_rows;
  return j;
}

Json residuals_json(const SolverResiduals& r) {
  Json j = Json::object();
  j["sdp_primal"] = r.sdp_primal;
  j["sdp_dual"] = r.sdp_dual;
  j["gap"] = number_or_null(r.gap);
  j["completeness"] = r.completeness;
  j["max_row_violation"] = r.max_row_violation;
  j["dual_shift"] = r.dual_shift;
  j["complex_structure"] = r.complex_structure;
  return j;
}

Json minimax_check_json(const MinimaxReport& r) {
  Json j = Json::object();
  j["passed"] = r.passed();
  j["f_star"] = r.f_star;
  j["weighted"] = r.weighted;
  j["per_criterion"] = r.per_criterion;
  j["support"] = r.support;
  j["statement2_residual"] = r.statement2_residual;
  j["worst_criterion"] = r.worst_criterion;
  j["saddle_residual"] = r.saddle_residual;
  j["dominance_residual"] = r.dominance_residual;
  j["equalizer_residual"] = r.equalizer_residual;
  j["mu_valid"] = r.mu_valid;
  j["feasible"] = r.feasible;
  j["statement2_ok"] = r.statement2_ok;
  j["statement3_ok"] = r.statement3_ok;
  j["inner_status"] = to_string(r.inner_status);
  j["message"] = r.message;
  return j;
}

Json covariance_json(const CovarianceReport& c, const FiniteGroup& g) {
  Json j = Json::object();
  j["covariant"] = c.covariant;
  j["max_residual"] = c.max_residual;
  j["group_order"] = g.size();
  if (!c.covariant) {
    Json v = Json::object();
    v["kind"] = c.kind;
    v["element"] = c.element >= 0 ? Json(g.element(c.element).id) : Json(nullptr);
    v["element_index"] = c.element;
    v["row"] = c.row;
    v["outcome"] = c.outcome;
    j["violation"] = std::move(v);
    j["message"] = c.message;
  }
  return j;
}

Json infeasibility_json(const InfeasibilityCertificate& c) {
  Json j = Json::object();
  j["X"] = matrix_to_json(c.X.matrix());
  j["lambda"] = c.lambda;
  j["value"] = c.value;
  j["max_min_slack"] = c.max_min_slack;
  return j;
}

Json metrics_json(const ProblemFile& file, const Povm& povm) {
  Json j = Json::object();
  if (!file.origin || !file.origin->ensemble || file.kind != ProblemKind::Primal) return j;
  const auto& e = *file.origin->ensemble;
  if (povm.size() < e.size() || povm.dim() != e.dim()) return j;
  j["success_probability"] = success_probability(e, povm);
  if (povm.size() == e.size() + 1) j["failure_probability"] = failure_probability(e, povm);
  if (povm.size() <= e.size() + 1) j["error_probability"] = error_probability(e, povm);
  return j;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

CertificateReport certify_result(const DiscriminationProblem& p, const SolverResult& r,
                                 const CertificateTolerances& tol) {
  return r.faces.empty() ? check_statement2(p, r.povm, r.dual, tol)
                         : check_statement2_on_face(p, r.povm, r.dual, r.faces, tol);
}

int exit_for_status(SolverStatus s) {
  switch (s) {
    case SolverStatus::Optimal:
      return kExitOk;
    case SolverStatus::Infeasible:
      return kExitInfeasible;
    default:
      return kExitNumerical;
  }
}

void add_solver_block(Json& rep, const SolverResult& r) {
  Json s = Json::object();
  s["residuals"] = residuals_json(r.residuals);
  s["face_reduced_rows"] = r.face_reduced_rows;
  s["message"] = r.message;
  rep["solver"] = std::move(s);
}

template <class Fn>
CommandResult guarded(const std::string& command, Fn&& fn) {
  auto fail = [&](int code, const std::string& type, const std::string& message, const std::string& field,
                  int line) {
    CommandResult out;
    out.exit_code = code;
    out.report = new_report(command);
    out.report["status"] = "error";
    out.report["exit_code"] = code;
    Json e = Json::object();
    e["type"] = type;
    e["message"] = message;
    if (!field.empty()) e["field"] = field;
    if (line > 0) e["line"] = line;
    out.report["error"] = std::move(e);
    out.report["summary"] = command + ": " + type + ": " + message;
    return out;
  };
  try {
    return fn();
  } catch (const ParseError& e) {
    return fail(kExitParse, "parse_error", e.what(), e.field(), e.line());
  } catch (const CovarianceViolation& e) {
    return fail(kExitCovariance, "covariance_violation", e.what(), "", 0);
  } catch (const SolverFailure& e) {
    return fail(kExitNumerical, "solver_failure", e.what(), "", 0);
  } catch (const EigDecompositionFailed& e) {
    return fail(kExitNumerical, "numerical_failure", e.what(), "", 0);
  } catch (const Error& e) {
    return fail(kExitParse, "invalid_input", e.what(), "", 0);
  } catch (const std::exception& e) {
    return fail(kExitNumerical, "internal_error", e.what(), "", 0);
  }
}

ProblemFile load(std::string_view text, const std::string& source, ProblemKind expected, const char* command) {
  ProblemFile file = parse_problem(text, source);
  if (file.kind != expected) {
    throw ParseError(std::string("'") + command + "' expects a " +
                         (expected == ProblemKind::Primal ? "primal" : "minimax") + " problem",
                     "/kind");
  }
  return file;
}

void finish(CommandResult& out, Clock::time_point t0, Json timings) {
  timings["total_ms"] = ms_since(t0);
  out.report["exit_code"] = out.exit_code;
  out.report["timings"] = std::move(timings);
}

}  // namespace

CommandResult cmd_solve(std::string_view text, const std::string& source, const RunOptions& options) {
  return guarded("solve", [&] {
    const auto t0 = Clock::now();
    options.solver.validate();
    const ProblemFile file = load(text, source, ProblemKind::Primal, "solve");
    const auto& p = *file.primal;
    Json timings = Json::object();
    timings["parse_ms"] = ms_since(t0);

    const auto t1 = Clock::now();
    const SolverResult r = solve(p, options.solver);
    timings["solve_ms"] = ms_since(t1);

    CommandResult out;
    out.report = new_report("solve");
    Json& rep = out.report;
    rep["status"] = to_string(r.status);
    rep["exit_code"] = 0;
    rep["input"] = input_json(text, source);
    rep["config"] = config_json(options);
    rep["primal_value"] = r.primal_value;
    rep["dual_value"] = number_or_null(r.dual_value);
    rep["gap"] = number_or_null(r.residuals.gap);
    rep["iterations"] = r.iterations;
    out.exit_code = exit_for_status(r.status);

    std::ostringstream summary;
    summary << "solve: " << to_string(r.status);
    if (r.status == SolverStatus::Infeasible) {
      if (r.infeasibility) rep["infeasibility"] = infeasibility_json(*r.infeasibility);
      summary << ", constraints cannot be met";
    } else {
      const Json metrics = metrics_json(file, r.povm);
      if (!metrics.empty()) rep["metrics"] = metrics;
      rep["povm"] = povm_json(r.povm);
      rep["dual"] = dual_json(r.dual, r.faces);
      const auto t2 = Clock::now();
      const CertificateReport cert = certify_result(p, r, options.certificate);
      timings["certify_ms"] = ms_since(t2);
      rep["certificate"] = certificate_json(cert);
      if (out.exit_code == kExitOk && !cert.passed()) out.exit_code = kExitCertificate;
      summary << ", value " << fmt(r.primal_value) << ", certificate "
              << (cert.passed() ? "passed" : "failed");
      if (metrics.contains("success_probability")) {
        summary << ", success " << fmt(metrics["success_probability"].get<double>());
      }
    }
    add_solver_block(rep, r);
    rep["summary"] = summary.str();
    finish(out, t0, std::move(timings));
    return out;
  });
}

CommandResult cmd_minimax(std::string_view text, const std::string& source, const RunOptions& options) {
  return guarded("minimax", [&] {
    const auto t0 = Clock::now();
    options.solver.validate();
    const ProblemFile file = load(text, source, ProblemKind::Minimax, "minimax");
    const auto& p = *file.minimax;
    Json timings = Json::object();
    timings["parse_ms"] = ms_since(t0);

    const auto t1 = Clock::now();
    const MinimaxSolution sol = solve_minimax(p, options.solver);
    timings["solve_ms"] = ms_since(t1);

    CommandResult out;
    out.report = new_report("minimax");
    Json& rep = out.report;
    rep["status"] = to_string(sol.status);
    rep["exit_code"] = 0;
    rep["input"] = input_json(text, source);
    rep["config"] = config_json(options);
    out.exit_code = exit_for_status(sol.status);
    std::ostringstream summary;
    summary << "minimax: " << to_string(sol.status);
    if (sol.status != SolverStatus::Infeasible) {
      rep["value"] = sol.value;
      rep["epigraph_value"] = sol.epigraph_value;
      rep["mu"] = sol.mu;
      rep["mu_fallback"] = sol.mu_fallback;
      rep["per_criterion"] = sol.per_criterion;
      rep["support"] = sol.support;
      rep["iterations"] = sol.iterations;
      rep["gap"] = number_or_null(sol.gap);
      rep["povm"] = povm_json(sol.povm);
      if (sol.status == SolverStatus::Optimal) {
        const auto t2 = Clock::now();
        const MinimaxReport check = check_minimax(p, sol.mu, sol.povm, options.minimax, options.solver);
        timings["certify_ms"] = ms_since(t2);
        rep["check"] = minimax_check_json(check);
        if (!check.passed()) {
          out.exit_code = check.inner_status == SolverStatus::Optimal ? kExitCertificate : kExitNumerical;
        }
        summary << ", value " << fmt(sol.value) << ", check " << (check.passed() ? "passed" : "failed");
      }
    }
    if (!sol.message.empty()) rep["message"] = sol.message;
    rep["summary"] = summary.str();
    finish(out, t0, std::move(timings));
    return out;
  });
}

CommandResult cmd_certify(std::string_view text, const std::string& source, std::string_view solution_text,
                          const std::string& solution_source, const RunOptions& options) {
  return guarded("certify", [&] {
    const auto t0 = Clock::now();
    const ProblemFile file = parse_problem(text, source);
    const SolutionFile sol = solution_from_json(parse_text(solution_text, solution_source), file.dim());
    if (!sol.povm) throw ParseError("solution has no 'povm'", solution_source + ":/povm");
    const int outcomes = file.primal ? file.primal->outcomes() : file.minimax->outcomes();
    if (sol.povm->size() != outcomes) {
      throw ParseError("POVM has " + std::to_string(sol.povm->size()) + " outcomes, problem has " +
                           std::to_string(outcomes),
                       solution_source + ":/povm");
    }

    CommandResult out;
    out.report = new_report("certify");
    Json& rep = out.report;
    rep["status"] = "";
    rep["exit_code"] = 0;
    Json inputs = input_json(text, source);
    inputs["solution"] = input_json(solution_text, solution_source);
    rep["input"] = std::move(inputs);
    rep["config"] = config_json(options);
    std::ostringstream summary;

    if (file.kind == ProblemKind::Primal) {
      const auto& p = *file.primal;
      std::vector<double> lambda = sol.lambda.value_or(std::vector<double>{});
      if (static_cast<int>(lambda.size()) != p.constraints()) {
        if (sol.lambda || p.constraints() > 0) {
          throw ParseError("lambda must have " + std::to_string(p.constraints()) + " entries",
                           solution_source + ":/dual/lambda");
        }
      }
      CertificateReport cert;
      std::string statement;
      if (sol.X) {
        statement = "statement2";
        if (!sol.faces.empty()) {
          if (static_cast<int>(sol.faces.size()) != p.outcomes()) {
            throw ParseError("one face per outcome is required", solution_source + ":/dual/faces");
          }
          cert = check_statement2_on_face(p, *sol.povm, {*sol.X, lambda}, sol.faces, options.certificate);
        } else {
          cert = check_statement2(p, *sol.povm, {*sol.X, lambda}, options.certificate);
        }
      } else {
        statement = "statement3";
        cert = check_statement3(p, *sol.povm, lambda, options.certificate);
      }
      rep["statement"] = statement;
      rep["certificate"] = certificate_json(cert);
      out.exit_code = cert.passed() ? kExitOk : kExitCertificate;
      summary << "certify: " << statement << " " << (cert.passed() ? "passed" : "failed");
      for (const auto& f : cert.failures()) summary << ", " << f;
    } else {
      const auto& p = *file.minimax;
      if (!sol.mu) throw ParseError("minimax solution has no 'mu'", solution_source + ":/mu");
      if (static_cast<int>(sol.mu->size()) != p.criteria()) {
        throw ParseError("mu must have " + std::to_string(p.criteria()) + " entries", solution_source + ":/mu");
      }
      const MinimaxReport check = check_minimax(p, *sol.mu, *sol.povm, options.minimax, options.solver);
      rep["statement"] = "minimax";
      rep["check"] = minimax_check_json(check);
      out.exit_code = check.passed() ? kExitOk
                      : (check.mu_valid && check.feasible && check.inner_status != SolverStatus::Optimal)
                          ? kExitNumerical
                          : kExitCertificate;
      summary << "certify: minimax " << (check.passed() ? "passed" : "failed");
      if (!check.message.empty()) summary << ", " << check.message;
    }
    rep["status"] = out.exit_code == kExitOk ? "passed" : "failed";
    rep["summary"] = summary.str();
    finish(out, t0, Json::object());
    return out;
  });
}

CommandResult cmd_symmetrize(std::string_view text, const std::string& source,
                             std::optional<std::string_view> solution_text, const RunOptions& options) {
  return guarded("symmetrize", [&] {
    const auto t0 = Clock::now();
    options.solver.validate();
    const ProblemFile file = parse_problem(text, source);
    if (!file.group) throw ParseError("problem has no group block", "/group");
    const FiniteGroup& group = *file.group;
    std::optional<SolutionFile> sol;
    if (solution_text) {
      sol = solution_from_json(parse_text(*solution_text, "<solution>"), file.dim());
      if (!sol->povm) throw ParseError("solution has no 'povm'", "<solution>:/povm");
    }

    CommandResult out;
    out.report = new_report("symmetrize");
    Json& rep = out.report;
    rep["status"] = "";
    rep["exit_code"] = 0;
    rep["input"] = input_json(text, source);
    rep["config"] = config_json(options);
    std::ostringstream summary;
    summary << "symmetrize: ";

    const CovarianceReport cov = file.primal ? check_problem_covariance(*file.primal, group)
                                             : check_problem_covariance(*file.minimax, group);
    rep["covariance"] = covariance_json(cov, group);
    if (!cov.covariant) {
      out.exit_code = kExitCovariance;
      rep["status"] = "not_covariant";
      rep["summary"] = "symmetrize: " + cov.message;
      finish(out, t0, Json::object());
      return out;
    }

    if (file.primal) {
      const auto& p = *file.primal;
      if (sol) {
        if (sol->povm->size() != p.outcomes()) throw ParseError("POVM outcome count differs", "<solution>:/povm");
        const double before = objective_value(p, *sol->povm);
        const Povm sym = average_povm(group, *sol->povm);
        const double after = objective_value(p, sym);
        rep["objective_before"] = before;
        rep["objective_after"] = after;
        rep["povm_covariance_residual"] = povm_covariance_residual(group, sym);
        rep["povm"] = povm_json(sym);
        std::vector<double> lambda = sol->lambda.value_or(std::vector<double>(static_cast<std::size_t>(p.constraints()), 0.0));
        if (static_cast<int>(lambda.size()) != p.constraints()) {
          throw ParseError("lambda length differs from constraint count", "<solution>:/dual/lambda");
        }
        CertificateReport cert;
        if (sol->X) {
          const DualCertificate dual = symmetrize_dual(group, {*sol->X, lambda});
          rep["dual"] = dual_json(dual, sol->faces);
          rep["dual_covariance_residual"] = dual_covariance_residual(group, dual);
          cert = sol->faces.empty() ? check_statement2(p, sym, dual, options.certificate)
                                    : check_statement2_on_face(p, sym, dual, sol->faces, options.certificate);
        } else {
          const DualCertificate avg = symmetrize_dual(group, {HermitianOperator::zero(p.dim()), lambda});
          cert = check_statement3(p, sym, avg.lambda, options.certificate);
          rep["dual"] = Json::object({{"lambda", avg.lambda}});
        }
        rep["certificate"] = certificate_json(cert);
        const bool preserved = std::abs(after - before) <= tol::kCovarianceDerived;
        rep["objective_preserved"] = preserved;
        out.exit_code = cert.passed() && preserved ? kExitOk : kExitCertificate;
        summary << "objective " << fmt(before) << " -> " << fmt(after) << ", certificate "
                << (cert.passed() ? "passed" : "failed");
      } else {
        const CovariantSolveResult cs = covariant_solve(p, group, options.solver);
        const SolverResult& r = cs.result;
        rep["solver_status"] = to_string(r.status);
        out.exit_code = exit_for_status(r.status);
        rep["objective_before"] = cs.objective_before;
        rep["objective_after"] = cs.objective_after;
        if (r.status == SolverStatus::Optimal) {
          rep["objective_preserved"] = cs.objective_preserved;
          rep["povm_covariance_residual"] = cs.povm_residual;
          rep["dual_covariance_residual"] = cs.dual_residual;
          const Json metrics = metrics_json(file, r.povm);
          if (!metrics.empty()) rep["metrics"] = metrics;
          rep["povm"] = povm_json(r.povm);
          rep["dual"] = dual_json(r.dual, r.faces);
          rep["certificate"] = certificate_json(cs.certificate);
          if (!cs.certificate.passed() || !cs.objective_preserved) out.exit_code = kExitCertificate;
          summary << "objective " << fmt(cs.objective_before) << " -> " << fmt(cs.objective_after)
                  << ", certificate " << (cs.certificate.passed() ? "passed" : "failed");
        } else {
          summary << "solver ended " << to_string(r.status);
        }
      }
    } else {
      const auto& p = *file.minimax;
      MinimaxSolution base = [&] {
        if (!sol) return solve_minimax(p, options.solver);
        if (!sol->mu) throw ParseError("minimax solution has no 'mu'", "<solution>:/mu");
        MinimaxSolution s(*sol->povm);
        s.status = SolverStatus::Optimal;
        s.mu = *sol->mu;
        s.per_criterion = criterion_values(p, s.povm);
        s.value = *std::min_element(s.per_criterion.begin(), s.per_criterion.end());
        return s;
      }();
      out.exit_code = exit_for_status(base.status);
      if (base.status == SolverStatus::Optimal) {
        const MinimaxSolution sym = symmetrize_minimax(p, group, base);
        const MinimaxReport check = check_minimax(p, sym.mu, sym.povm, options.minimax, options.solver);
        rep["value_before"] = base.value;
        rep["value_after"] = sym.value;
        rep["mu_before"] = base.mu;
        rep["mu"] = sym.mu;
        rep["per_criterion"] = sym.per_criterion;
        rep["povm_covariance_residual"] = povm_covariance_residual(group, sym.povm);
        rep["mu_covariance_residual"] = weight_covariance_residual(group, sym.mu);
        rep["povm"] = povm_json(sym.povm);
        rep["check"] = minimax_check_json(check);
        if (!check.passed()) out.exit_code = kExitCertificate;
        summary << "value " << fmt(base.value) << " -> " << fmt(sym.value) << ", check "
                << (check.passed() ? "passed" : "failed");
      } else {
        summary << "solver ended " << to_string(base.status);
      }
    }
    rep["status"] = out.exit_code == kExitOk ? "passed" : "failed";
    rep["summary"] = summary.str();
    finish(out, t0, Json::object());
    return out;
  });
}

CommandResult cmd_template(const TemplateSpec& spec, const RunOptions& options) {
  return guarded("template", [&] {
    (void)options;
    CommandResult out;
    out.report = problem_to_json(expand_template(spec));
    return out;
  });
}

StateEnsemble random_ensemble_from_spec(const std::string& spec, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  auto bad = [&] { return ParseError("expected d:R or d:R:mixed, got '" + spec + "'", "--random"); };
  if (parts.size() < 2 || parts.size() > 3) throw bad();
  int d = 0;
  int r = 0;
  try {
    std::size_t used = 0;
    d = std::stoi(parts[0], &used);
    if (used != parts[0].size()) throw bad();
    r = std::stoi(parts[1], &used);
    if (used != parts[1].size()) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  EnsembleKind kind = EnsembleKind::Pure;
  if (parts.size() == 3) {
    if (parts[2] == "mixed") {
      kind = EnsembleKind::Mixed;
    } else if (parts[2] != "pure") {
      throw bad();
    }
  }
  try {
    return random_ensemble(d, r, kind, seed);
  } catch (const Error& e) {
    throw ParseError(e.what(), "--random");
  }
}

CommandResult run_path(const std::string& command, const std::string& path, const RunOptions& options) {
  auto run_one = [&](const std::string& file) {
    return guarded(command, [&] {
      const std::string text = read_file(file);
      if (command == "solve") return cmd_solve(text, file, options);
      if (command == "minimax") return cmd_minimax(text, file, options);
      if (command == "symmetrize") return cmd_symmetrize(text, file, std::nullopt, options);
      throw ParseError("command '" + command + "' does not take a single path", "");
    });
  };
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(path, ec)) return run_one(path);

  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  std::vector<CommandResult> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) results[i] = run_one(files[i]);
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CommandResult out;
  out.report = new_report(command);
  Json batch = Json::array();
  int failed = 0;
  for (auto& r : results) {
    out.exit_code = std::max(out.exit_code, r.exit_code);
    failed += r.exit_code != kExitOk ? 1 : 0;
    batch.push_back(std::move(r.report));
  }
  out.report["exit_code"] = out.exit_code;
  out.report["batch"] = std::move(batch);
  out.report["summary"] = command + ": " + std::to_string(files.size()) + " files, " + std::to_string(failed) +
                          " with nonzero exit";
  return out;
}

}  // namespace povmopt::cli

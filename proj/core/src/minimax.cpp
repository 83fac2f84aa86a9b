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

#include "povmopt/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "povmopt/errors.hpp"

namespace povmopt {

MinimaxProblem MinimaxProblem::make(std::vector<std::vector<HermitianOperator>> criterion_ops,
                                    std::vector<double> offsets,
                                    std::vector<std::vector<HermitianOperator>> constraint_ops,
                                    std::vector<double> bounds, Labels labels) {
  if (criterion_ops.empty()) throw CountMismatch("a minimax problem needs at least one criterion");
  if (criterion_ops.size() != offsets.size()) {
    std::ostringstream msg;
    msg << criterion_ops.size() << " criteria but " << offsets.size() << " offsets";
    throw CountMismatch(msg.str());
  }
  const std::size_t m_count = criterion_ops.front().size();
  if (m_count == 0) throw OutcomeCountMismatch("criteria need at least one outcome");
  const int d = criterion_ops.front().front().dim();
  for (std::size_t k = 0; k < criterion_ops.size(); ++k) {
    if (criterion_ops[k].size() != m_count) {
      std::ostringstream msg;
      msg << "criterion " << k << " has " << criterion_ops[k].size() << " operators, expected "
          << m_count;
      throw OutcomeCountMismatch(msg.str());
    }
    for (const auto& c : criterion_ops[k]) {
      if (c.dim() != d) throw DimMismatch("criterion operators have different dimensions");
    }
  }
  if (!labels.criteria.empty() && labels.criteria.size() != offsets.size()) {
    throw CountMismatch("criterion label count differs from criterion count");
  }
  std::vector<HermitianOperator> zero(m_count, HermitianOperator::zero(d));
  auto feasible = DiscriminationProblem::make(std::move(zero), std::move(constraint_ops),
                                              std::move(bounds),
                                              {labels.outcomes, labels.constraints});
  return MinimaxProblem(std::move(criterion_ops), std::move(offsets), std::move(feasible),
                        std::move(labels));
}

DiscriminationProblem MinimaxProblem::weighted(std::span<const double> mu) const {
  if (mu.size() != offsets_.size()) throw LengthMismatch("mu length differs from criterion count");
  std::vector<HermitianOperator> c;
  for (int m = 0; m < outcomes(); ++m) {
    ComplexMatrix s = ComplexMatrix::Zero(dim(), dim());
    for (int k = 0; k < criteria(); ++k) s += mu[static_cast<std::size_t>(k)] * criterion_op(k, m).matrix();
    c.push_back(HermitianOperator::symmetrized(s));
  }
  return feasible_.with_objective(std::move(c));
}

DiscriminationProblem MinimaxProblem::criterion(int k) const {
  return feasible_.with_objective(criteria_.at(static_cast<std::size_t>(k)));
}

bool MinimaxProblem::operator==(const MinimaxProblem& other) const {
  return criteria_ == other.criteria_ && offsets_ == other.offsets_ &&
         feasible_ == other.feasible_ && labels_.criteria == other.labels_.criteria;
}

std::vector<double> criterion_values(const MinimaxProblem& problem, const Povm& povm) {
  if (povm.size() != problem.outcomes()) throw OutcomeCountMismatch("POVM outcome count differs");
  if (povm.dim() != problem.dim()) throw DimMismatch("POVM dimension differs");
  std::vector<double> f(static_cast<std::size_t>(problem.criteria()));
  for (int k = 0; k < problem.criteria(); ++k) {
    double v = problem.offset(k);
    for (int m = 0; m < problem.outcomes(); ++m) v += trace_pair(problem.criterion_op(k, m), povm[m]);
    f[static_cast<std::size_t>(k)] = v;
  }
  return f;
}

double weighted_value(const MinimaxProblem& problem, std::span<const double> mu, const Povm& povm) {
  if (mu.size() != static_cast<std::size_t>(problem.criteria())) throw LengthMismatch("mu length differs");
  const auto f = criterion_values(problem, povm);
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += mu[k] * f[k];
  return s;
}

PovmProgram epigraph_program(const MinimaxProblem& problem) {
  const int d = problem.dim();
  const int big_k = problem.criteria();
  const int big_j = problem.constraints();
  const auto& feas = problem.feasible_set();

  double lower = std::numeric_limits<double>::infinity();
  for (int k = 0; k < big_k; ++k) {
    double lmin = std::numeric_limits<double>::infinity();
    for (int m = 0; m < problem.outcomes(); ++m) lmin = std::min(lmin, min_eigenvalue(problem.criterion_op(k, m)));
    lower = std::min(lower, problem.offset(k) + d * lmin);
  }
  lower -= 1.0;

  std::vector<std::vector<HermitianOperator>> rows;
  std::vector<double> bounds;
  DiscriminationProblem::Labels labels;
  labels.outcomes = feas.labels().outcomes;
  for (int k = 0; k < big_k; ++k) {
    std::vector<HermitianOperator> row;
    for (int m = 0; m < problem.outcomes(); ++m) row.push_back(-problem.criterion_op(k, m));
    rows.push_back(std::move(row));
    bounds.push_back(problem.offset(k) - lower);
    labels.constraints.push_back("epigraph:" + std::to_string(k));
  }
  for (int j = 0; j < big_j; ++j) {
    rows.push_back(feas.constraint_ops()[static_cast<std::size_t>(j)]);
    bounds.push_back(feas.bound(j));
    labels.constraints.push_back(feas.labels().constraints.empty()
                                     ? "row:" + std::to_string(j)
                                     : feas.labels().constraints[static_cast<std::size_t>(j)]);
  }
  PovmProgram program(DiscriminationProblem::make(feas.objective_ops(), std::move(rows),
                                                  std::move(bounds), std::move(labels)));
  program.extra_objective = {1.0};
  program.extra_coefficients = Eigen::MatrixXd::Zero(big_k + big_j, 1);
  program.extra_coefficients.topRows(big_k).setOnes();
  program.objective_offset = lower;
  return program;
}

namespace {

std::vector<int> support_of(const std::vector<double>& mu, double tol) {
  std::vector<int> s;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (mu[k] > tol) s.push_back(static_cast<int>(k));
  }
  return s;
}

}  // namespace

MinimaxSolution solve_minimax(const MinimaxProblem& problem, const SolverConfig& config) {
  const int big_k = problem.criteria();
  const SolverResult r = solve(epigraph_program(problem), config);
  MinimaxSolution sol(r.povm);
  sol.status = r.status;
  sol.iterations = r.iterations;
  sol.gap = r.residuals.gap;
  sol.message = r.message;
  sol.per_criterion = criterion_values(problem, sol.povm);
  sol.value = *std::min_element(sol.per_criterion.begin(), sol.per_criterion.end());
  sol.epigraph_value = r.primal_value;

  std::vector<double> mu(r.dual.lambda.begin(), r.dual.lambda.begin() + big_k);
  for (auto& v : mu) v = std::max(v, 0.0);
  const double total = std::accumulate(mu.begin(), mu.end(), 0.0);
  if (total > 1e-12) {
    for (auto& v : mu) v /= total;
  } else {
    sol.mu_fallback = true;
    const double scale = 1.0 + std::abs(sol.value);
    std::vector<int> argmin;
    for (int k = 0; k < big_k; ++k) {
      if (sol.per_criterion[static_cast<std::size_t>(k)] <= sol.value + 1e-7 * scale) argmin.push_back(k);
    }
    std::fill(mu.begin(), mu.end(), 0.0);
    for (int k : argmin) mu[static_cast<std::size_t>(k)] = 1.0 / static_cast<double>(argmin.size());
  }
  sol.mu = std::move(mu);
  sol.support = support_of(sol.mu, tol::kSupport);
  return sol;
}

std::pair<double, Povm> f_star(const MinimaxProblem& problem, std::span<const double> mu,
                               const SolverConfig& config) {
  if (mu.size() != static_cast<std::size_t>(problem.criteria())) throw LengthMismatch("mu length differs");
  double total = 0.0;
  for (double v : mu) {
    if (!(v >= 0.0)) throw InvalidParameter("mu entries must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidParameter("mu must sum to 1");
  const SolverResult r = solve(problem.weighted(mu), config);
  if (r.status != SolverStatus::Optimal) {
    throw SolverFailure("inner solve for F*(mu) ended with status " + to_string(r.status));
  }
  double value = r.primal_value;
  for (int k = 0; k < problem.criteria(); ++k) value += mu[static_cast<std::size_t>(k)] * problem.offset(k);
  return {value, r.povm};
}

MinimaxReport check_minimax(const MinimaxProblem& problem, std::span<const double> mu,
                            const Povm& povm, const MinimaxTolerances& tolerances,
                            const SolverConfig& config) {
  MinimaxReport rep;
  std::ostringstream notes;
  double total = 0.0;
  rep.mu_valid = mu.size() == static_cast<std::size_t>(problem.criteria());
  for (double v : mu) {
    rep.mu_valid = rep.mu_valid && v >= 0.0;
    total += v;
  }
  rep.mu_valid = rep.mu_valid && std::abs(total - 1.0) <= 1e-9;
  if (!rep.mu_valid) {
    notes << "mu is not a probability vector; ";
    rep.message = notes.str();
    return rep;
  }
  if (povm.size() != problem.outcomes() || povm.dim() != problem.dim()) {
    rep.message = "POVM shape does not match the problem";
    return rep;
  }
  rep.feasible = is_feasible(problem.feasible_set(), povm, tolerances.feasibility).feasible;
  if (!rep.feasible) notes << "POVM is not in the feasible set; ";
  rep.per_criterion = criterion_values(problem, povm);
  rep.weighted = weighted_value(problem, mu, povm);
  std::vector<double> mu_vec(mu.begin(), mu.end());
  rep.support = support_of(mu_vec, tolerances.support);

  try {
    rep.f_star = f_star(problem, mu, config).first;
    rep.inner_status = SolverStatus::Optimal;
  } catch (const SolverFailure& e) {
    notes << e.what() << "; ";
    rep.message = notes.str();
    return rep;
  }

  for (int k = 0; k < problem.criteria(); ++k) {
    const double deficit = rep.f_star - rep.per_criterion[static_cast<std::size_t>(k)];
    if (deficit > rep.statement2_residual || rep.worst_criterion < 0) {
      rep.statement2_residual = std::max(deficit, 0.0);
      rep.worst_criterion = k;
    }
  }
  rep.saddle_residual = std::abs(rep.f_star - rep.weighted);
  for (int kp : rep.support) {
    const double fkp = rep.per_criterion[static_cast<std::size_t>(kp)];
    for (int k = 0; k < problem.criteria(); ++k) {
      rep.dominance_residual = std::max(rep.dominance_residual, fkp - rep.per_criterion[static_cast<std::size_t>(k)]);
    }
    for (int k : rep.support) {
      rep.equalizer_residual = std::max(rep.equalizer_residual, std::abs(fkp - rep.per_criterion[static_cast<std::size_t>(k)]));
    }
  }
  rep.statement2_ok = rep.statement2_residual <= tolerances.criterion;
  rep.statement3_ok = rep.saddle_residual <= tolerances.criterion &&
                      rep.dominance_residual <= tolerances.criterion;
  if (!rep.statement2_ok) {
    const auto& names = problem.labels().criteria;
    notes << "criterion "
          << (names.empty() ? std::to_string(rep.worst_criterion)
                            : names[static_cast<std::size_t>(rep.worst_criterion)])
          << " falls below F*(mu) by " << rep.statement2_residual << "; ";
  }
  if (!rep.statement3_ok) notes << "saddle or support dominance condition violated; ";
  rep.message = notes.str();
  return rep;
}

namespace {

void require_common_dim(const std::vector<DensityOperator>& states) {
  if (states.empty()) throw CountMismatch("at least one state is required");
  for (const auto& s : states) {
    if (s.dim() != states.front().dim()) throw DimMismatch("states have different dimensions");
  }
}

}  // namespace

MinimaxProblem build_minimax_bayes(const std::vector<DensityOperator>& states, const BayesCost& costs) {
  require_common_dim(states);
  const int r_count = static_cast<int>(states.size());
  if (costs.size() != r_count) throw CountMismatch("cost matrix size differs from state count");
  std::vector<std::vector<HermitianOperator>> c;
  MinimaxProblem::Labels labels;
  for (int k = 0; k < r_count; ++k) {
    std::vector<HermitianOperator> row;
    for (int m = 0; m < r_count; ++m) row.push_back(states[static_cast<std::size_t>(k)].op() * (-costs(m, k)));
    c.push_back(std::move(row));
    labels.criteria.push_back("state:" + std::to_string(k));
  }
  for (int m = 0; m < r_count; ++m) labels.outcomes.push_back("guess:" + std::to_string(m));
  return MinimaxProblem::make(std::move(c), std::vector<double>(static_cast<std::size_t>(r_count), 0.0), {},
                              {}, std::move(labels));
}

MinimaxProblem build_inconclusive_minimax(const std::vector<DensityOperator>& states, double p) {
  require_common_dim(states);
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("p must lie in [0, 1]");
  const int r_count = static_cast<int>(states.size());
  const int d = states.front().dim();
  std::vector<std::vector<HermitianOperator>> c;
  std::vector<std::vector<HermitianOperator>> a;
  MinimaxProblem::Labels labels;
  for (int k = 0; k < r_count; ++k) {
    std::vector<HermitianOperator> row(static_cast<std::size_t>(r_count + 1), HermitianOperator::zero(d));
    row[static_cast<std::size_t>(k)] = states[static_cast<std::size_t>(k)].op();
    row.back() = states[static_cast<std::size_t>(k)].op();
    c.push_back(std::move(row));
    std::vector<HermitianOperator> arow(static_cast<std::size_t>(r_count + 1), HermitianOperator::zero(d));
    arow.back() = states[static_cast<std::size_t>(k)].op();
    a.push_back(std::move(arow));
    labels.criteria.push_back("state:" + std::to_string(k));
    labels.constraints.push_back("failure:" + std::to_string(k));
    labels.outcomes.push_back("guess:" + std::to_string(k));
  }
  labels.outcomes.push_back("inconclusive");
  return MinimaxProblem::make(std::move(c), std::vector<double>(static_cast<std::size_t>(r_count), 0.0),
                              std::move(a), std::vector<double>(static_cast<std::size_t>(r_count), p),
                              std::move(labels));
}

MinimaxProblem build_plural_sets(const std::vector<StateEnsemble>& sets) {
  if (sets.empty()) throw CountMismatch("at least one state set is required");
  const int r_count = sets.front().size();
  const int d = sets.front().dim();
  std::vector<std::vector<HermitianOperator>> c;
  MinimaxProblem::Labels labels;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (sets[k].size() != r_count) throw CountMismatch("state sets have different sizes");
    if (sets[k].dim() != d) throw DimMismatch("state sets have different dimensions");
    std::vector<HermitianOperator> row;
    for (int m = 0; m < r_count; ++m) row.push_back(sets[k].weighted_state(m));
    c.push_back(std::move(row));
    labels.criteria.push_back("set:" + std::to_string(k));
  }
  for (int m = 0; m < r_count; ++m) labels.outcomes.push_back("guess:" + std::to_string(m));
  return MinimaxProblem::make(std::move(c), std::vector<double>(sets.size(), 0.0), {}, {},
                              std::move(labels));
}

}  // namespace povmopt

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

#include "povmopt/problem.hpp"

#include <cmath>
#include <sstream>

#include "povmopt/errors.hpp"

namespace povmopt {

DiscriminationProblem DiscriminationProblem::make(
    std::vector<HermitianOperator> objective,
    std::vector<std::vector<HermitianOperator>> constraint_ops, std::vector<double> bounds,
    Labels labels) {
  if (objective.empty()) throw OutcomeCountMismatch("a problem needs at least one outcome");
  const int d = objective.front().dim();
  const std::size_t m_count = objective.size();
  for (const auto& c : objective) {
    if (c.dim() != d) throw DimMismatch("objective operators have different dimensions");
  }
  if (constraint_ops.size() != bounds.size()) {
    std::ostringstream msg;
    msg << constraint_ops.size() << " constraint rows but " << bounds.size() << " bounds";
    throw CountMismatch(msg.str());
  }
  for (std::size_t j = 0; j < constraint_ops.size(); ++j) {
    if (constraint_ops[j].size() != m_count) {
      std::ostringstream msg;
      msg << "constraint row " << j << " has " << constraint_ops[j].size() << " operators, expected "
          << m_count;
      throw OutcomeCountMismatch(msg.str());
    }
    for (const auto& a : constraint_ops[j]) {
      if (a.dim() != d) throw DimMismatch("constraint operator dimension differs from objective");
    }
    if (!std::isfinite(bounds[j])) throw InvalidParameter("constraint bounds must be finite");
  }
  if (!labels.outcomes.empty() && labels.outcomes.size() != m_count) {
    throw CountMismatch("outcome label count differs from outcome count");
  }
  if (!labels.constraints.empty() && labels.constraints.size() != bounds.size()) {
    throw CountMismatch("constraint label count differs from constraint count");
  }
  DiscriminationProblem p;
  p.dim_ = d;
  p.objective_ = std::move(objective);
  p.constraint_ops_ = std::move(constraint_ops);
  p.bounds_ = std::move(bounds);
  p.labels_ = std::move(labels);
  return p;
}

DiscriminationProblem DiscriminationProblem::with_objective(
    std::vector<HermitianOperator> objective) const {
  return make(std::move(objective), constraint_ops_, bounds_, labels_);
}

bool DiscriminationProblem::operator==(const DiscriminationProblem& other) const {
  return dim_ == other.dim_ && objective_ == other.objective_ &&
         constraint_ops_ == other.constraint_ops_ && bounds_ == other.bounds_ &&
         labels_.outcomes == other.labels_.outcomes &&
         labels_.constraints == other.labels_.constraints;
}

namespace {

void require_compatible(const DiscriminationProblem& problem, const Povm& povm) {
  if (povm.size() != problem.outcomes()) {
    std::ostringstream msg;
    msg << "POVM has " << povm.size() << " outcomes, problem expects " << problem.outcomes();
    throw OutcomeCountMismatch(msg.str());
  }
  if (povm.dim() != problem.dim()) {
    std::ostringstream msg;
    msg << "POVM dimension " << povm.dim() << ", problem dimension " << problem.dim();
    throw DimMismatch(msg.str());
  }
}

}  // namespace

double objective_value(const DiscriminationProblem& problem, const Povm& povm) {
  require_compatible(problem, povm);
  double f = 0.0;
  for (int m = 0; m < problem.outcomes(); ++m) f += trace_pair(problem.objective_op(m), povm[m]);
  return f;
}

std::vector<double> constraint_values(const DiscriminationProblem& problem, const Povm& povm) {
  require_compatible(problem, povm);
  std::vector<double> v(static_cast<std::size_t>(problem.constraints()), 0.0);
  for (int j = 0; j < problem.constraints(); ++j) {
    for (int m = 0; m < problem.outcomes(); ++m) {
      v[static_cast<std::size_t>(j)] += trace_pair(problem.constraint_op(j, m), povm[m]);
    }
  }
  return v;
}

FeasibilityReport is_feasible(const DiscriminationProblem& problem, const Povm& povm,
                              double feasibility_tol) {
  FeasibilityReport r;
  r.povm = povm.residuals();
  r.povm_valid = r.povm.valid(tol::kPsd, tol::kCompleteness);
  r.values = constraint_values(problem, povm);
  r.slacks.resize(r.values.size());
  for (std::size_t j = 0; j < r.values.size(); ++j) {
    r.slacks[j] = problem.bounds()[j] - r.values[j];
    if (r.slacks[j] < -feasibility_tol) r.violated_rows.push_back(static_cast<int>(j));
  }
  r.feasible = r.povm_valid && r.violated_rows.empty();
  return r;
}

BayesCost BayesCost::make(Eigen::MatrixXd costs) {
  if (costs.rows() != costs.cols() || costs.rows() == 0) {
    throw DimMismatch("Bayes cost matrix must be square and nonempty");
  }
  if (!costs.allFinite() || (costs.array() < 0.0).any()) {
    throw InvalidParameter("Bayes costs must be finite and nonnegative");
  }
  return BayesCost(std::move(costs));
}

BayesCost BayesCost::min_error(int count) {
  if (count < 1) throw InvalidParameter("state count must be >= 1");
  Eigen::MatrixXd c = Eigen::MatrixXd::Ones(count, count);
  c.diagonal().setZero();
  return BayesCost(std::move(c));
}

DiscriminationProblem build_bayes(const StateEnsemble& ensemble, const BayesCost& costs) {
  const int r_count = ensemble.size();
  if (costs.size() != r_count) {
    std::ostringstream msg;
    msg << "cost matrix is " << costs.size() << "x" << costs.size() << " for " << r_count
        << " states";
    throw CountMismatch(msg.str());
  }
  std::vector<HermitianOperator> c;
  DiscriminationProblem::Labels labels;
  for (int m = 0; m < r_count; ++m) {
    ComplexMatrix w = ComplexMatrix::Zero(ensemble.dim(), ensemble.dim());
    for (int r = 0; r < r_count; ++r) {
      w += (ensemble.prior(r) * costs(m, r)) * ensemble.state(r).op().matrix();
    }
    c.push_back(HermitianOperator::symmetrized(-w));
    labels.outcomes.push_back("guess:" + std::to_string(m));
  }
  return DiscriminationProblem::make(std::move(c), {}, {}, std::move(labels));
}

DiscriminationProblem build_min_error(const StateEnsemble& ensemble) {
  return build_bayes(ensemble, BayesCost::min_error(ensemble.size()));
}

namespace {

DiscriminationProblem::Labels inconclusive_outcome_labels(int r_count) {
  DiscriminationProblem::Labels labels;
  for (int m = 0; m < r_count; ++m) labels.outcomes.push_back("guess:" + std::to_string(m));
  labels.outcomes.push_back("inconclusive");
  return labels;
}

std::vector<HermitianOperator> success_objective(const StateEnsemble& ensemble) {
  std::vector<HermitianOperator> c;
  for (int m = 0; m < ensemble.size(); ++m) c.push_back(ensemble.weighted_state(m));
  c.push_back(HermitianOperator::zero(ensemble.dim()));
  return c;
}

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in [0, 1], got " << v;
    throw InvalidParameter(msg.str());
  }
}

}  // namespace

DiscriminationProblem build_error_margin(const StateEnsemble& ensemble, double epsilon) {
  require_unit_interval(epsilon, "epsilon");
  const int r_count = ensemble.size();
  std::vector<HermitianOperator> row;
  for (int m = 0; m < r_count; ++m) row.push_back(-ensemble.weighted_state(m));
  row.push_back(-ensemble.average_state());
  auto labels = inconclusive_outcome_labels(r_count);
  labels.constraints = {"margin"};
  return DiscriminationProblem::make(success_objective(ensemble), {std::move(row)},
                                     {epsilon - 1.0}, std::move(labels));
}

DiscriminationProblem build_bounded_inconclusive(const StateEnsemble& ensemble, double p,
                                                 double q) {
  require_unit_interval(p, "p");
  // q > 1 is well formed but infeasible for every POVM; keep it expressible.
  if (!(q >= 0.0 && std::isfinite(q))) throw InvalidParameter("q must be finite and >= 0");
  const int r_count = ensemble.size();
  const int d = ensemble.dim();
  std::vector<std::vector<HermitianOperator>> rows;
  std::vector<double> bounds;
  auto labels = inconclusive_outcome_labels(r_count);
  for (int j = 0; j < r_count; ++j) {
    std::vector<HermitianOperator> row(static_cast<std::size_t>(r_count + 1),
                                       HermitianOperator::zero(d));
    row[static_cast<std::size_t>(j)] = -ensemble.state(j).op();
    rows.push_back(std::move(row));
    bounds.push_back(-q);
    labels.constraints.push_back("success:" + std::to_string(j));
  }
  std::vector<HermitianOperator> last(static_cast<std::size_t>(r_count + 1),
                                      HermitianOperator::zero(d));
  last.back() = -ensemble.average_state();
  rows.push_back(std::move(last));
  bounds.push_back(-p);
  labels.constraints.push_back("failure");
  return DiscriminationProblem::make(success_objective(ensemble), std::move(rows),
                                     std::move(bounds), std::move(labels));
}

double success_probability(const StateEnsemble& ensemble, const Povm& povm) {
  if (povm.size() < ensemble.size()) throw OutcomeCountMismatch("POVM has fewer outcomes than states");
  if (povm.dim() != ensemble.dim()) throw DimMismatch("POVM and ensemble dimensions differ");
  double s = 0.0;
  for (int r = 0; r < ensemble.size(); ++r) {
    s += ensemble.prior(r) * trace_pair(ensemble.state(r).op(), povm[r]);
  }
  return s;
}

double failure_probability(const StateEnsemble& ensemble, const Povm& povm) {
  if (povm.size() != ensemble.size() + 1) {
    throw OutcomeCountMismatch("failure probability needs exactly one inconclusive outcome");
  }
  if (povm.dim() != ensemble.dim()) throw DimMismatch("POVM and ensemble dimensions differ");
  return trace_pair(ensemble.average_state(), povm[ensemble.size()]);
}

double error_probability(const StateEnsemble& ensemble, const Povm& povm) {
  const double failure = povm.size() > ensemble.size() ? failure_probability(ensemble, povm) : 0.0;
  return 1.0 - success_probability(ensemble, povm) - failure;
}

DiscriminationProblem canonicalize_equalities(std::vector<HermitianOperator> objective,
                                              std::vector<RawConstraint> rows,
                                              std::vector<std::string> outcome_labels) {
  std::vector<std::vector<HermitianOperator>> ops;
  std::vector<double> bounds;
  DiscriminationProblem::Labels labels;
  labels.outcomes = std::move(outcome_labels);
  bool any_label = false;
  for (const auto& r : rows) any_label = any_label || !r.label.empty();
  for (auto& r : rows) {
    if (r.relation == ConstraintRelation::Equal) {
      std::vector<HermitianOperator> negated;
      negated.reserve(r.ops.size());
      for (const auto& a : r.ops) negated.push_back(-a);
      ops.push_back(r.ops);
      bounds.push_back(r.bound);
      ops.push_back(std::move(negated));
      bounds.push_back(-r.bound);
      if (any_label) {
        labels.constraints.push_back(r.label + ":le");
        labels.constraints.push_back(r.label + ":ge");
      }
    } else {
      ops.push_back(std::move(r.ops));
      bounds.push_back(r.bound);
      if (any_label) labels.constraints.push_back(r.label);
    }
  }
  return DiscriminationProblem::make(std::move(objective), std::move(ops), std::move(bounds),
                                     std::move(labels));
}

}  // namespace povmopt

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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "povmopt/operator.hpp"

namespace povmopt {

/// maximize sum_m Tr(c_m Pi_m) over POVMs with
/// sum_m Tr(a_{j,m} Pi_m) <= b_j for every constraint row j.
///
/// All constraint rows are inequalities; equalities are expanded into mirrored
/// pairs when the problem is built (see canonicalize_equalities).
class DiscriminationProblem {
 public:
  struct Labels {
    std::vector<std::string> outcomes;
    std::vector<std::string> constraints;
  };

  /// Checks shapes and dimensions; throws DimMismatch / OutcomeCountMismatch /
  /// CountMismatch.
  static DiscriminationProblem make(std::vector<HermitianOperator> objective,
                                    std::vector<std::vector<HermitianOperator>> constraint_ops,
                                    std::vector<double> bounds, Labels labels = {});

  int dim() const noexcept { return dim_; }
  int outcomes() const noexcept { return static_cast<int>(objective_.size()); }
  int constraints() const noexcept { return static_cast<int>(bounds_.size()); }

  const std::vector<HermitianOperator>& objective_ops() const noexcept { return objective_; }
  const HermitianOperator& objective_op(int m) const { return objective_.at(static_cast<std::size_t>(m)); }
  const std::vector<std::vector<HermitianOperator>>& constraint_ops() const noexcept { return constraint_ops_; }
  const HermitianOperator& constraint_op(int j, int m) const {
    return constraint_ops_.at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(m));
  }
  const std::vector<double>& bounds() const noexcept { return bounds_; }
  double bound(int j) const { return bounds_.at(static_cast<std::size_t>(j)); }
  const Labels& labels() const noexcept { return labels_; }

  /// Same constraints, new objective operators.
  DiscriminationProblem with_objective(std::vector<HermitianOperator> objective) const;

  /// Exact comparison of every operator, bound, and label.
  bool operator==(const DiscriminationProblem& other) const;

 private:
  DiscriminationProblem() = default;

  int dim_ = 0;
  std::vector<HermitianOperator> objective_;
  std::vector<std::vector<HermitianOperator>> constraint_ops_;
  std::vector<double> bounds_;
  Labels labels_;
};

/// sum_m Tr(c_m Pi_m). Throws DimMismatch, OutcomeCountMismatch.
double objective_value(const DiscriminationProblem& problem, const Povm& povm);

/// j-th entry is sum_m Tr(a_{j,m} Pi_m).
std::vector<double> constraint_values(const DiscriminationProblem& problem, const Povm& povm);

struct FeasibilityReport {
  PovmResiduals povm;
  std::vector<double> values;  ///< sum_m Tr(a_{j,m} Pi_m)
  std::vector<double> slacks;  ///< b_j - values_j
  std::vector<int> violated_rows;
  bool povm_valid = false;
  bool feasible = false;
};

FeasibilityReport is_feasible(const DiscriminationProblem& problem, const Povm& povm,
                              double feasibility_tol = tol::kCompleteness);

/// Bayes cost coefficients B_{m,r} >= 0.
class BayesCost {
 public:
  static BayesCost make(Eigen::MatrixXd costs);
  /// B_{m,r} = 1 - delta_{m,r}.
  static BayesCost min_error(int count);

  int size() const noexcept { return static_cast<int>(costs_.rows()); }
  double operator()(int m, int r) const { return costs_(m, r); }
  const Eigen::MatrixXd& matrix() const noexcept { return costs_; }

 private:
  explicit BayesCost(Eigen::MatrixXd c) : costs_(std::move(c)) {}
  Eigen::MatrixXd costs_;
};

/// M = R, J = 0, c_m = -sum_r xi_r B_{m,r} rho_r. With min_error costs the
/// objective is minus the average error probability.
DiscriminationProblem build_bayes(const StateEnsemble& ensemble, const BayesCost& costs);
DiscriminationProblem build_min_error(const StateEnsemble& ensemble);

/// Maximize the average success probability with average error <= epsilon.
/// M = R + 1 (outcome R is inconclusive), J = 1, b_0 = epsilon - 1.
DiscriminationProblem build_error_margin(const StateEnsemble& ensemble, double epsilon);

/// Maximize the average success probability with Tr(rho_r Pi_r) >= q for all r
/// and failure probability Tr(G Pi_R) >= p. M = J = R + 1.
DiscriminationProblem build_bounded_inconclusive(const StateEnsemble& ensemble, double p, double q);

/// sum_r xi_r Tr(rho_r Pi_r) for the first R outcomes.
double success_probability(const StateEnsemble& ensemble, const Povm& povm);
/// sum_r xi_r Tr(rho_r Pi_R) where R = ensemble.size() (the inconclusive outcome).
double failure_probability(const StateEnsemble& ensemble, const Povm& povm);
/// 1 - success - failure.
double error_probability(const StateEnsemble& ensemble, const Povm& povm);

enum class ConstraintRelation { LessEqual, Equal };

struct RawConstraint {
  std::vector<HermitianOperator> ops;
  double bound = 0.0;
  ConstraintRelation relation = ConstraintRelation::LessEqual;
  std::string label;
};

/// Equal rows (a, b) become (a, b) and (-a, -b); LessEqual rows pass through.
DiscriminationProblem canonicalize_equalities(std::vector<HermitianOperator> objective,
                                              std::vector<RawConstraint> rows,
                                              std::vector<std::string> outcome_labels = {});

}  // namespace povmopt

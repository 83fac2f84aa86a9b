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

#include <string>
#include <utility>
#include <vector>

#include "povmopt/operator.hpp"
#include "povmopt/problem.hpp"
#include "povmopt/sdp.hpp"

namespace povmopt {

/// K criteria f_k(Pi) = sum_m Tr(c_{k,m} Pi_m) + d_k over a shared feasible
/// set given by J constraint rows.
class MinimaxProblem {
 public:
  struct Labels {
    std::vector<std::string> outcomes;
    std::vector<std::string> constraints;
    std::vector<std::string> criteria;
  };

  static MinimaxProblem make(std::vector<std::vector<HermitianOperator>> criterion_ops,
                             std::vector<double> offsets,
                             std::vector<std::vector<HermitianOperator>> constraint_ops,
                             std::vector<double> bounds, Labels labels = {});

  int dim() const noexcept { return feasible_.dim(); }
  int outcomes() const noexcept { return feasible_.outcomes(); }
  int criteria() const noexcept { return static_cast<int>(offsets_.size()); }
  int constraints() const noexcept { return feasible_.constraints(); }

  const std::vector<std::vector<HermitianOperator>>& criterion_ops() const noexcept { return criteria_; }
  const HermitianOperator& criterion_op(int k, int m) const {
    return criteria_.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(m));
  }
  const std::vector<double>& offsets() const noexcept { return offsets_; }
  double offset(int k) const { return offsets_.at(static_cast<std::size_t>(k)); }
  const Labels& labels() const noexcept { return labels_; }

  /// The shared feasible set (objective identically zero).
  const DiscriminationProblem& feasible_set() const noexcept { return feasible_; }
  /// Objective c_m = sum_k mu_k c_{k,m}; offsets are not included.
  DiscriminationProblem weighted(std::span<const double> mu) const;
  /// Objective c_{k,m} for one criterion.
  DiscriminationProblem criterion(int k) const;

  bool operator==(const MinimaxProblem& other) const;

 private:
  MinimaxProblem(std::vector<std::vector<HermitianOperator>> c, std::vector<double> d,
                 DiscriminationProblem feasible, Labels labels)
      : criteria_(std::move(c)), offsets_(std::move(d)), feasible_(std::move(feasible)),
        labels_(std::move(labels)) {}

  std::vector<std::vector<HermitianOperator>> criteria_;
  std::vector<double> offsets_;
  DiscriminationProblem feasible_;
  Labels labels_;
};

/// f_k(Pi) for every k.
std::vector<double> criterion_values(const MinimaxProblem& problem, const Povm& povm);
/// F(mu, Pi) = sum_k mu_k f_k(Pi).
double weighted_value(const MinimaxProblem& problem, std::span<const double> mu, const Povm& povm);

struct MinimaxSolution {
  explicit MinimaxSolution(Povm p) : povm(std::move(p)) {}

  SolverStatus status = SolverStatus::NumericalFailure;
  std::vector<double> mu;
  Povm povm;
  /// min_k f_k(Pi*).
  double value = 0.0;
  /// Value of the epigraph variable at the solver optimum.
  double epigraph_value = 0.0;
  std::vector<double> per_criterion;
  std::vector<int> support;
  /// True when the epigraph multipliers vanished and mu was taken uniform on
  /// the argmin set.
  bool mu_fallback = false;
  int iterations = 0;
  double gap = 0.0;
  std::string message;
};

/// Epigraph program: maximize t subject to f_k(Pi) >= t and Pi feasible.
/// t is written as t = L + u with u >= 0 and L a lower bound of every f_k.
PovmProgram epigraph_program(const MinimaxProblem& problem);

/// Solves the epigraph SDP; mu* comes from the multipliers of the K
/// epigraph rows.
MinimaxSolution solve_minimax(const MinimaxProblem& problem, const SolverConfig& config = {});

/// F*(mu) = max_Pi F(mu, Pi) and a maximizer. Throws InvalidParameter if mu
/// is not on the simplex and SolverFailure if the inner solve is not optimal.
std::pair<double, Povm> f_star(const MinimaxProblem& problem, std::span<const double> mu,
                               const SolverConfig& config = {});

struct MinimaxTolerances {
  double criterion = 1e-5;
  double support = tol::kSupport;
  double feasibility = tol::kCertificate;
};

struct MinimaxReport {
  double f_star = 0.0;       ///< F*(mu)
  double weighted = 0.0;     ///< F(mu, Pi)
  std::vector<double> per_criterion;
  std::vector<int> support;
  /// max_k max(0, F*(mu) - f_k(Pi)).
  double statement2_residual = 0.0;
  int worst_criterion = -1;
  /// |F*(mu) - F(mu, Pi)|.
  double saddle_residual = 0.0;
  /// max max(0, f_{k'} - f_k) over all k and k' in the support.
  double dominance_residual = 0.0;
  /// max |f_k - f_{k'}| over k, k' in the support.
  double equalizer_residual = 0.0;

  bool mu_valid = false;
  bool feasible = false;
  bool statement2_ok = false;
  bool statement3_ok = false;
  SolverStatus inner_status = SolverStatus::NumericalFailure;
  std::string message;

  bool passed() const { return mu_valid && feasible && statement2_ok && statement3_ok; }
};

/// Verifies f_k(Pi) >= F*(mu) for all k and F*(mu) = F(mu, Pi) with
/// f_k >= f_{k'} for k' in the support. Never throws on bad candidates.
MinimaxReport check_minimax(const MinimaxProblem& problem, std::span<const double> mu,
                            const Povm& povm, const MinimaxTolerances& tolerances = {},
                            const SolverConfig& config = {});

/// K = M = R, J = 0, c_{k,m} = -B_{m,k} rho_k, d_k = 0.
MinimaxProblem build_minimax_bayes(const std::vector<DensityOperator>& states, const BayesCost& costs);

/// M = R + 1, K = J = R, c_{k,m} = rho_k for m in {k, R}, a_{j,m} = delta_{m,R} rho_j, b_j = p.
MinimaxProblem build_inconclusive_minimax(const std::vector<DensityOperator>& states, double p);

/// K ensembles of R states each: M = R, J = 0, c_{k,m} = xi_{k,m} rho_{k,m}.
MinimaxProblem build_plural_sets(const std::vector<StateEnsemble>& sets);

}  // namespace povmopt

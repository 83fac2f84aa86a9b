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
#include <span>
#include <string>
#include <vector>

#include "povmopt/certificate.hpp"
#include "povmopt/minimax.hpp"
#include "povmopt/operator.hpp"
#include "povmopt/problem.hpp"
#include "povmopt/sdp.hpp"

namespace povmopt {

/// A unitary or anti-unitary symmetry together with its action on the
/// outcome, constraint and (optionally) criterion index sets. An anti-unitary
/// element acts as A -> U conj(A) U^dagger.
struct GroupElement {
  std::string id;
  ComplexMatrix op;
  bool antiunitary = false;
  std::vector<int> perm_M;
  std::vector<int> perm_J;
  std::optional<std::vector<int>> perm_K;

  int dim() const noexcept { return static_cast<int>(op.rows()); }

  static GroupElement identity(int dim, int outcomes, int constraints,
                               std::optional<int> criteria = std::nullopt);
};

/// (U, a)(V, b) = (U conj_a(V), a xor b), permutations composed so that
/// (gh).m = g.(h.m).
GroupElement compose(const GroupElement& g, const GroupElement& h, std::string id = {});

/// Throws DimMismatch.
HermitianOperator act(const GroupElement& g, const HermitianOperator& a);

class FiniteGroup {
 public:
  /// Validates unitarity, permutation shapes, identity, closure and
  /// faithfulness; builds the multiplication table. Throws InvalidGroup.
  static FiniteGroup make(std::vector<GroupElement> elements);
  static FiniteGroup trivial(int dim, int outcomes, int constraints,
                             std::optional<int> criteria = std::nullopt);
  /// Powers of `generator` until its action returns to the identity.
  static FiniteGroup cyclic(const GroupElement& generator, int max_order = 256);

  int size() const noexcept { return static_cast<int>(elements_.size()); }
  int dim() const noexcept { return elements_.front().dim(); }
  int outcomes() const noexcept { return static_cast<int>(elements_.front().perm_M.size()); }
  int constraints() const noexcept { return static_cast<int>(elements_.front().perm_J.size()); }
  bool acts_on_criteria() const noexcept { return elements_.front().perm_K.has_value(); }
  int criteria() const noexcept {
    return acts_on_criteria() ? static_cast<int>(elements_.front().perm_K->size()) : 0;
  }

  const GroupElement& element(int i) const { return elements_.at(static_cast<std::size_t>(i)); }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  int identity_index() const noexcept { return identity_; }
  int product(int g, int h) const { return table_.at(static_cast<std::size_t>(g * size() + h)); }
  int inverse(int g) const { return inverse_.at(static_cast<std::size_t>(g)); }

 private:
  FiniteGroup() = default;

  std::vector<GroupElement> elements_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

struct CovarianceReport {
  bool covariant = true;
  /// Largest Frobenius (or absolute, for scalars) residual over all identities.
  double max_residual = 0.0;
  /// Location of the largest violation; -1 when not applicable.
  int element = -1;
  int row = -1;  ///< constraint j, or criterion k when `kind` starts with "criterion"
  int outcome = -1;
  /// "objective", "constraint", "bound", "criterion", "offset" or "shape".
  std::string kind;
  std::string message;
};

CovarianceReport check_problem_covariance(const DiscriminationProblem& problem,
                                          const FiniteGroup& group,
                                          double tolerance = tol::kCovarianceInput);
CovarianceReport check_problem_covariance(const MinimaxProblem& problem, const FiniteGroup& group,
                                          double tolerance = tol::kCovarianceInput);

/// kappa_g(Phi)_m = g^{-1}.Phi_{g.m}.
Povm kappa_g(const FiniteGroup& group, int g, const Povm& phi);
/// kappa(Phi)_m = |G|^{-1} sum_g g^{-1}.Phi_{g.m}, summed in element order.
Povm average_povm(const FiniteGroup& group, const Povm& phi);

/// max over g, m of ||g.Pi_m - Pi_{g.m}||_F.
double povm_covariance_residual(const FiniteGroup& group, const Povm& povm);
/// max over g, k of |mu_k - mu_{g.k}|.
double weight_covariance_residual(const FiniteGroup& group, std::span<const double> mu);
/// max over g of ||g.X - X||_F and |lambda_j - lambda_{g.j}|.
double dual_covariance_residual(const FiniteGroup& group, const DualCertificate& dual);

/// X -> |G|^{-1} sum_g g.X, lambda_j -> |G|^{-1} sum_g lambda_{g^{-1}.j}.
DualCertificate symmetrize_dual(const FiniteGroup& group, const DualCertificate& dual);

struct CovariantSolveResult {
  explicit CovariantSolveResult(SolverResult r) : result(std::move(r)) {}

  /// Solver output with the POVM replaced by kappa(Pi) and the dual averaged.
  SolverResult result;
  CovarianceReport covariance;
  CertificateReport certificate;
  double objective_before = 0.0;
  double objective_after = 0.0;
  double povm_residual = 0.0;
  double dual_residual = 0.0;
  bool objective_preserved = false;
};

/// Throws CovarianceViolation when the problem is not covariant.
CovariantSolveResult covariant_solve(const DiscriminationProblem& problem, const FiniteGroup& group,
                                     const SolverConfig& config = {},
                                     double objective_tol = tol::kCovarianceDerived);

/// mu_k -> |G|^{-1} sum_g mu_{g.k}, Pi -> kappa(Pi). Throws CovarianceViolation.
MinimaxSolution symmetrize_minimax(const MinimaxProblem& problem, const FiniteGroup& group,
                                   const MinimaxSolution& solution);

}  // namespace povmopt

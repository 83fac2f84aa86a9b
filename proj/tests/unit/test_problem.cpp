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
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace povmopt {
namespace {

ComplexVector ket(Complex a, Complex b) {
  ComplexVector v(2);
  v << a, b;
  return v;
}

StateEnsemble orthogonal_pair() {
  return StateEnsemble::equiprobable(
      {DensityOperator::pure(ket(1.0, 0.0)), DensityOperator::pure(ket(0.0, 1.0))});
}

Povm computational_basis() {
  return Povm::make({HermitianOperator::projector(ket(1.0, 0.0)),
                     HermitianOperator::projector(ket(0.0, 1.0))});
}

/// Helstrom measurement for {|0>, |+>} with equal priors.
Povm helstrom_projectors(const StateEnsemble& e) {
  const auto diff = e.weighted_state(0) - e.weighted_state(1);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(diff.matrix());
  const ComplexVector neg = es.eigenvectors().col(0);
  const ComplexVector pos = es.eigenvectors().col(1);
  return Povm::make({HermitianOperator::projector(pos), HermitianOperator::projector(neg)});
}

/// Pi_m = 0 for m < R, Pi_R = 1.
Povm always_abstain(int dim, int states) {
  std::vector<HermitianOperator> out(static_cast<std::size_t>(states), HermitianOperator::zero(dim));
  out.push_back(HermitianOperator::identity(dim));
  return Povm::make(std::move(out));
}

TEST(ProblemModel, ShapeValidation) {
  const auto id = HermitianOperator::identity(2);
  EXPECT_THROW(DiscriminationProblem::make({}, {}, {}), OutcomeCountMismatch);
  EXPECT_THROW(DiscriminationProblem::make({id, HermitianOperator::identity(3)}, {}, {}),
               DimMismatch);
  EXPECT_THROW(DiscriminationProblem::make({id, id}, {{id}}, {0.0}), OutcomeCountMismatch);
  EXPECT_THROW(DiscriminationProblem::make({id, id}, {{id, id}}, {}), CountMismatch);
}

TEST(ObjectiveValue, ZeroObjective) {
  const auto p = DiscriminationProblem::make(
      {HermitianOperator::zero(2), HermitianOperator::zero(2)}, {}, {});
  EXPECT_EQ(objective_value(p, fixtures::random_povm(2, 2, 3)), 0.0);
}

TEST(ObjectiveValue, OrthogonalStatesPerfect) {
  const auto e = orthogonal_pair();
  const auto p = build_min_error(e);
  // The min-error objective is minus the error probability.
  EXPECT_NEAR(objective_value(p, computational_basis()), 0.0, 1e-15);
  EXPECT_NEAR(success_probability(e, computational_basis()), 1.0, 1e-15);
}

TEST(ObjectiveValue, HelstromProjectors) {
  const auto e = oracle::pure_pair(1.0 / std::sqrt(2.0));
  const auto povm = helstrom_projectors(e);
  EXPECT_NEAR(success_probability(e, povm), 0.853553, 1e-6);
  EXPECT_NEAR(objective_value(build_min_error(e), povm), 0.853553 - 1.0, 1e-6);
}

TEST(ObjectiveValue, CountAndDimensionChecks) {
  const auto p = build_min_error(orthogonal_pair());
  EXPECT_THROW(objective_value(p, Povm::uniform(2, 3)), OutcomeCountMismatch);
  EXPECT_THROW(objective_value(p, Povm::uniform(3, 2)), DimMismatch);
}

TEST(ConstraintValues, EmptyWhenUnconstrained) {
  EXPECT_TRUE(constraint_values(build_min_error(orthogonal_pair()), computational_basis()).empty());
}

TEST(ConstraintValues, BoundedInconclusiveAbstain) {
  const auto e = random_ensemble(2, 2, EnsembleKind::Mixed, 11);
  const auto p = build_bounded_inconclusive(e, 0.2, 0.1);
  const auto v = constraint_values(p, always_abstain(2, 2));
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[0], 0.0, 1e-15);
  EXPECT_NEAR(v[1], 0.0, 1e-15);
  EXPECT_NEAR(v[2], -1.0, 1e-12);
}

TEST(ConstraintValues, ErrorMarginAbstain) {
  const auto e = random_ensemble(3, 2, EnsembleKind::Pure, 4);
  for (double eps : {0.0, 0.3, 1.0}) {
    const auto p = build_error_margin(e, eps);
    const auto v = constraint_values(p, always_abstain(3, 2));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NEAR(v[0], -1.0, 1e-12);
    EXPECT_LE(v[0], p.bound(0) + 1e-12);
  }
}

TEST(IsFeasible, UniformPovmUnconstrained) {
  const auto p = build_min_error(random_ensemble(3, 4, EnsembleKind::Mixed, 1));
  const auto rep = is_feasible(p, Povm::uniform(3, 4));
  EXPECT_TRUE(rep.feasible);
  EXPECT_TRUE(rep.slacks.empty());
}

TEST(IsFeasible, HelstromProjectors) {
  const auto e = oracle::pure_pair(0.6);
  const auto rep = is_feasible(build_min_error(e), helstrom_projectors(e));
  EXPECT_TRUE(rep.feasible);
  EXPECT_TRUE(rep.values.empty());
}

TEST(IsFeasible, SuccessBoundAboveOneViolated) {
  const auto e = random_ensemble(2, 2, EnsembleKind::Pure, 9);
  const auto p = build_bounded_inconclusive(e, 0.0, 1.2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rep = is_feasible(p, fixtures::random_povm(2, 3, seed));
    EXPECT_FALSE(rep.feasible);
    ASSERT_FALSE(rep.violated_rows.empty());
    EXPECT_TRUE(rep.violated_rows.front() == 0 || rep.violated_rows.front() == 1);
  }
}

TEST(IsFeasible, ReportsInvalidPovm) {
  const auto p = build_min_error(orthogonal_pair());
  const auto bad = Povm::unchecked({HermitianOperator::identity(2), HermitianOperator::identity(2)});
  const auto rep = is_feasible(p, bad);
  EXPECT_FALSE(rep.povm_valid);
  EXPECT_FALSE(rep.feasible);
}

TEST(BuildBayes, MinErrorMapping) {
  const auto e = random_ensemble(2, 2, EnsembleKind::Mixed, 3);
  const auto p = build_bayes(e, BayesCost::min_error(2));
  EXPECT_EQ(p.outcomes(), 2);
  EXPECT_EQ(p.constraints(), 0);
  EXPECT_LT(distance(p.objective_op(0), -e.weighted_state(1)), 1e-15);
  EXPECT_LT(distance(p.objective_op(1), -e.weighted_state(0)), 1e-15);
}

TEST(BuildBayes, ZeroCosts) {
  const auto e = random_ensemble(2, 3, EnsembleKind::Mixed, 3);
  const auto p = build_bayes(e, BayesCost::make(Eigen::MatrixXd::Zero(3, 3)));
  for (int m = 0; m < 3; ++m) EXPECT_EQ(p.objective_op(m).frobenius_norm(), 0.0);
  const auto r = solve(p);
  ASSERT_EQ(r.status, SolverStatus::Optimal);
  EXPECT_NEAR(r.primal_value, 0.0, 1e-9);
}

TEST(BuildBayes, TrineOptimum) {
  const auto r = solve(build_bayes(oracle::trine(), BayesCost::min_error(3)));
  ASSERT_EQ(r.status, SolverStatus::Optimal);
  EXPECT_NEAR(r.primal_value, -1.0 / 3.0, 1e-7);
}

TEST(BuildBayes, Validation) {
  const auto e = random_ensemble(2, 2, EnsembleKind::Mixed, 3);
  EXPECT_THROW(build_bayes(e, BayesCost::min_error(3)), CountMismatch);
  Eigen::MatrixXd neg = Eigen::MatrixXd::Ones(2, 2);
  neg(0, 1) = -1.0;
  EXPECT_THROW(BayesCost::make(neg), InvalidParameter);
}

TEST(BuildBayes, ObjectiveIsMinusErrorProbability) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto e = random_ensemble(3, 3, EnsembleKind::Mixed, seed);
    const auto p = build_min_error(e);
    const auto povm = fixtures::random_povm(3, 3, seed + 50);
    EXPECT_NEAR(objective_value(p, povm), -(1.0 - success_probability(e, povm)), 1e-12);
  }
}

TEST(BuildErrorMargin, Shape) {
  const auto e = random_ensemble(2, 2, EnsembleKind::Pure, 1);
  const auto p = build_error_margin(e, 0.25);
  EXPECT_EQ(p.outcomes(), 3);
  EXPECT_EQ(p.constraints(), 1);
  EXPECT_DOUBLE_EQ(p.bound(0), 0.25 - 1.0);
  EXPECT_EQ(p.labels().constraints.front(), "margin");
  EXPECT_THROW(build_error_margin(e, 1.5), InvalidParameter);
  EXPECT_THROW(build_error_margin(e, -0.1), InvalidParameter);
}

TEST(BuildErrorMargin, VacuousAtOneMatchesMinError) {
  const auto e = random_ensemble(2, 2, EnsembleKind::Mixed, 21);
  const auto margin = solve(build_error_margin(e, 1.0));
  const auto plain = solve(build_min_error(e));
  ASSERT_EQ(margin.status, SolverStatus::Optimal);
  ASSERT_EQ(plain.status, SolverStatus::Optimal);
  EXPECT_NEAR(margin.primal_value, success_probability(e, plain.povm), 1e-7);
}

TEST(BuildErrorMargin, UnambiguousLimit) {
  const double s = 1.0 / std::sqrt(2.0);
  const auto r = solve(build_error_margin(oracle::pure_pair(s), 0.0));
  ASSERT_EQ(r.status, SolverStatus::Optimal);
  EXPECT_NEAR(r.primal_value, 1.0 - s, 1e-6);
}

TEST(BuildErrorMargin, ProbabilitiesPartitionUnity) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto e = random_ensemble(2, 3, EnsembleKind::Mixed, seed);
    const auto p = build_error_margin(e, 0.2);
    const auto povm = fixtures::random_povm(2, 4, seed + 9);
    const double sp = success_probability(e, povm);
    const double fp = failure_probability(e, povm);
    const double ep = error_probability(e, povm);
    EXPECT_NEAR(sp + fp + ep, 1.0, tol::kCompleteness);
    EXPECT_NEAR(constraint_values(p, povm)[0], -(1.0 - ep), 1e-12);
  }
}

TEST(BuildBoundedInconclusive, Shape) {
  const auto e = random_ensemble(2, 2, EnsembleKind::Pure, 1);
  const auto p = build_bounded_inconclusive(e, 0.2, 0.1);
  EXPECT_EQ(p.outcomes(), 3);
  EXPECT_EQ(p.constraints(), 3);
  EXPECT_EQ(p.bounds(), (std::vector<double>{-0.1, -0.1, -0.2}));
  EXPECT_THROW(build_bounded_inconclusive(e, 1.1, 0.0), InvalidParameter);
  EXPECT_THROW(build_bounded_inconclusive(e, 0.0, -0.1), InvalidParameter);
}

TEST(BuildBoundedInconclusive, ZeroBoundsMatchMinError) {
  const auto e = random_ensemble(2, 2, EnsembleKind::Mixed, 8);
  const auto bounded = solve(build_bounded_inconclusive(e, 0.0, 0.0));
  const auto plain = solve(build_min_error(e));
  ASSERT_EQ(bounded.status, SolverStatus::Optimal);
  EXPECT_NEAR(bounded.primal_value, success_probability(e, plain.povm), 1e-6);
}

TEST(BuildBoundedInconclusive, MonotoneInBounds) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto e = random_ensemble(2, 2, EnsembleKind::Pure, seed + 30);
    double last = 2.0;
    for (double p : {0.0, 0.2, 0.4}) {
      const auto r = solve(build_bounded_inconclusive(e, p, 0.0));
      ASSERT_EQ(r.status, SolverStatus::Optimal);
      EXPECT_LE(r.primal_value, last + 1e-7);
      last = r.primal_value;
    }
    last = 2.0;
    for (double q : {0.0, 0.1, 0.2}) {
      const auto r = solve(build_bounded_inconclusive(e, 0.1, q));
      if (r.status == SolverStatus::Infeasible) break;
      ASSERT_EQ(r.status, SolverStatus::Optimal);
      EXPECT_LE(r.primal_value, last + 1e-7);
      last = r.primal_value;
    }
  }
}

TEST(BuildBoundedInconclusive, UnreachableSuccessBoundInfeasible) {
  // Unambiguous identification of these states succeeds at most 1 - s.
  const double s = 0.8;
  const auto r = solve(build_bounded_inconclusive(oracle::pure_pair(s), 0.0, 0.9));
  EXPECT_EQ(r.status, SolverStatus::Infeasible);
}

TEST(Canonicalize, EqualitySplitsIntoMirroredRows) {
  const auto id = HermitianOperator::identity(2);
  const auto z = HermitianOperator::zero(2);
  RawConstraint row{{z, id}, 0.3, ConstraintRelation::Equal, "pin"};
  const auto p = canonicalize_equalities({id, z}, {row});
  ASSERT_EQ(p.constraints(), 2);
  EXPECT_DOUBLE_EQ(p.bound(0), 0.3);
  EXPECT_DOUBLE_EQ(p.bound(1), -0.3);
  EXPECT_EQ(p.constraint_op(1, 1), -id);
  EXPECT_EQ(p.constraint_op(1, 0), -z);
}

TEST(Canonicalize, InequalitiesUntouched) {
  const auto id = HermitianOperator::identity(2);
  RawConstraint row{{id, id}, 2.0, ConstraintRelation::LessEqual, "r"};
  const auto p = canonicalize_equalities({id, id}, {row});
  const auto q = DiscriminationProblem::make({id, id}, {{id, id}}, {2.0});
  EXPECT_EQ(p.constraints(), 1);
  EXPECT_EQ(p.constraint_ops(), q.constraint_ops());
  EXPECT_EQ(p.bounds(), q.bounds());
}

TEST(Canonicalize, FailureEqualityKeepsFeasibleSet) {
  const auto e = random_ensemble(2, 2, EnsembleKind::Mixed, 5);
  const double p = 0.3;
  std::vector<HermitianOperator> obj;
  for (int m = 0; m < 3; ++m) obj.push_back(HermitianOperator::zero(2));
  std::vector<HermitianOperator> ops(3, HermitianOperator::zero(2));
  ops[2] = e.average_state();
  const auto canon = canonicalize_equalities(obj, {{ops, p, ConstraintRelation::Equal, "f"}});
  ASSERT_EQ(canon.constraints(), 2);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto povm = fixtures::random_povm(2, 3, seed);
    const double f = failure_probability(e, povm);
    const bool on_plane = std::abs(f - p) <= 1e-9;
    EXPECT_EQ(is_feasible(canon, povm, 1e-9).feasible, on_plane);
  }
  // Exact points on the plane: Pi_R = t 1 with Tr(G Pi_R) = t = p.
  const auto on = Povm::make({HermitianOperator::identity(2) * 0.4, HermitianOperator::identity(2) * 0.3,
                              HermitianOperator::identity(2) * p});
  EXPECT_TRUE(is_feasible(canon, on).feasible);
}

TEST(Templates, LabelsPresent) {
  const auto e = random_ensemble(2, 2, EnsembleKind::Pure, 1);
  const auto p = build_bounded_inconclusive(e, 0.1, 0.1);
  EXPECT_EQ(p.labels().outcomes.back(), "inconclusive");
  EXPECT_EQ(p.labels().constraints.back(), "failure");
  EXPECT_EQ(p.labels().constraints.front(), "success:0");
}

}  // namespace
}  // namespace povmopt

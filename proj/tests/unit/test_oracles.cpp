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

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace povmopt {
namespace {

TEST(HelstromOracle, PlusZeroPair) {
  const auto e = oracle::pure_pair(1.0 / std::sqrt(2.0));
  EXPECT_NEAR(oracle::helstrom_success(e), 0.5 + 0.5 / std::sqrt(2.0), 1e-12);

  const auto r = solve(build_min_error(e));
  ASSERT_EQ(r.status, SolverStatus::Optimal);
  EXPECT_NEAR(success_probability(e, r.povm), 0.8535534, 1e-6);
  EXPECT_TRUE(check_statement2(build_min_error(e), r.povm, r.dual).passed());
}

TEST(HelstromOracle, UnequalPriorsAndOverlaps) {
  for (double s : {0.1, 0.5, 0.95}) {
    for (double xi : {0.2, 0.5, 0.8}) {
      const auto e = oracle::pure_pair(s, xi);
      const auto r = solve(build_min_error(e));
      ASSERT_EQ(r.status, SolverStatus::Optimal) << "s=" << s << " xi=" << xi;
      EXPECT_NEAR(success_probability(e, r.povm), oracle::helstrom_success(e), 1e-6);
    }
  }
}

TEST(UnambiguousOracle, ZeroMarginGivesIdp) {
  for (double s : {0.3, 1.0 / std::sqrt(2.0), 0.9}) {
    const auto e = oracle::pure_pair(s);
    const auto r = solve(build_error_margin(e, 0.0));
    ASSERT_EQ(r.status, SolverStatus::Optimal) << "s=" << s;
    EXPECT_NEAR(success_probability(e, r.povm), oracle::idp_success(s), 1e-6) << "s=" << s;
    EXPECT_LE(error_probability(e, r.povm), 1e-6);
  }
}

TEST(TrineOracle, SuccessTwoThirds) {
  const auto e = oracle::trine();
  const auto r = solve(build_min_error(e));
  ASSERT_EQ(r.status, SolverStatus::Optimal);
  EXPECT_NEAR(success_probability(e, r.povm), 2.0 / 3.0, 1e-6);
}

TEST(InconclusiveOracle, BoundedInconclusiveAtZeroQ) {
  for (double s : {0.5, 1.0 / std::sqrt(2.0)}) {
    const auto e = oracle::pure_pair(s);
    for (double p : {0.0, 0.1, 0.3}) {
      const auto r = solve(build_bounded_inconclusive(e, p, 0.0));
      ASSERT_EQ(r.status, SolverStatus::Optimal) << "s=" << s << " p=" << p;
      EXPECT_NEAR(success_probability(e, r.povm), oracle::inconclusive_success(s, p), 1e-6);
    }
  }
}

TEST(InconclusiveOracle, EndpointsMatchHelstromAndIdp) {
  const double s = 0.6;
  EXPECT_NEAR(oracle::inconclusive_success(s, 0.0), oracle::helstrom_success(oracle::pure_pair(s)), 1e-12);
  EXPECT_NEAR(oracle::inconclusive_success(s, s), oracle::idp_success(s), 1e-12);
}

TEST(BlochGridOracle, AgreesWithSdpOnQubitPairs) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto e = random_ensemble(2, 2, EnsembleKind::Mixed, seed);
    const auto p = build_min_error(e);
    const auto r = solve(p);
    ASSERT_EQ(r.status, SolverStatus::Optimal);
    const double grid = oracle::bloch_grid_max(p);
    EXPECT_LE(grid, r.primal_value + 1e-7);
    EXPECT_NEAR(grid, r.primal_value, 1e-3);
  }
}

TEST(SimplexGridOracle, SymmetricPairMinimumAtCentre) {
  const auto e = oracle::pure_pair(1.0 / std::sqrt(2.0));
  const auto mp = build_minimax_bayes(e.states(), BayesCost::min_error(2));
  const auto grid = oracle::simplex_grid_min(mp, 50);
  EXPECT_EQ(grid.evaluations, 51);
  ASSERT_EQ(grid.argmin.size(), 2u);
  EXPECT_NEAR(grid.argmin[0], 0.5, 1e-12);
  EXPECT_NEAR(-grid.value, 1.0 - oracle::helstrom_success(e), 1e-6);
}

}  // namespace
}  // namespace povmopt

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

#include <benchmark/benchmark.h>

#include "povmopt/povmopt.hpp"

namespace {

using namespace povmopt;

StateEnsemble pure_pair(double overlap) {
  ComplexVector a(2);
  a << 1.0, 0.0;
  ComplexVector b(2);
  b << overlap, std::sqrt(1.0 - overlap * overlap);
  return StateEnsemble::equiprobable({DensityOperator::pure(a), DensityOperator::pure(b)});
}

void BM_HelstromSolve(benchmark::State& state) {
  const auto problem = build_min_error(pure_pair(1.0 / std::sqrt(2.0)));
  for (auto _ : state) {
    auto r = solve(problem);
    benchmark::DoNotOptimize(r.primal_value);
  }
}
BENCHMARK(BM_HelstromSolve);

void BM_RandomMinError(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto problem = build_min_error(random_ensemble(d, d + 1, EnsembleKind::Mixed, 7));
  SolverConfig cfg;
  cfg.record_trace = false;
  for (auto _ : state) {
    auto r = solve(problem, cfg);
    benchmark::DoNotOptimize(r.primal_value);
  }
  state.SetLabel("d=" + std::to_string(d) + " M=" + std::to_string(d + 1));
}
BENCHMARK(BM_RandomMinError)->DenseRange(2, 4);

void BM_UnambiguousFacialReduction(benchmark::State& state) {
  const auto problem = build_error_margin(pure_pair(0.6), 0.0);
  for (auto _ : state) {
    auto r = solve(problem);
    benchmark::DoNotOptimize(r.primal_value);
  }
}
BENCHMARK(BM_UnambiguousFacialReduction);

void BM_BoundedInconclusive(benchmark::State& state) {
  const auto problem = build_bounded_inconclusive(random_ensemble(3, 3, EnsembleKind::Pure, 11), 0.2, 0.05);
  for (auto _ : state) {
    auto r = solve(problem);
    benchmark::DoNotOptimize(r.primal_value);
  }
}
BENCHMARK(BM_BoundedInconclusive);

void BM_MinimaxBayes(benchmark::State& state) {
  const auto e = random_ensemble(3, 3, EnsembleKind::Mixed, 3);
  const auto problem = build_minimax_bayes(e.states(), BayesCost::min_error(3));
  for (auto _ : state) {
    auto r = solve_minimax(problem);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_MinimaxBayes);

void BM_CertificateCheck(benchmark::State& state) {
  const auto problem = build_min_error(random_ensemble(4, 5, EnsembleKind::Mixed, 5));
  const auto r = solve(problem);
  for (auto _ : state) {
    auto c = check_statement2(problem, r.povm, r.dual);
    benchmark::DoNotOptimize(c.gap);
  }
}
BENCHMARK(BM_CertificateCheck);

void BM_GroupAverage(benchmark::State& state) {
  const double th = 2.0 * M_PI / 3.0;
  GroupElement g;
  g.id = "r";
  g.op = ComplexMatrix(2, 2);
  g.op << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  g.perm_M = {1, 2, 0};
  const auto group = FiniteGroup::cyclic(g);
  const Povm phi = Povm::uniform(2, 3);
  for (auto _ : state) {
    auto k = average_povm(group, phi);
    benchmark::DoNotOptimize(k[0].matrix().data());
  }
}
BENCHMARK(BM_GroupAverage);

}  // namespace

BENCHMARK_MAIN();

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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace povmopt::oracle {

namespace {

ComplexMatrix pauli(int i) {
  ComplexMatrix s(2, 2);
  if (i == 0) s << 0, 1, 1, 0;
  if (i == 1) s << 0, Complex(0, -1), Complex(0, 1), 0;
  if (i == 2) s << 1, 0, 0, -1;
  return s;
}

}  // namespace

double helstrom_success(const StateEnsemble& pair) {
  const HermitianOperator diff = pair.weighted_state(0) - pair.weighted_state(1);
  return 0.5 * (1.0 + trace_norm(diff));
}

double idp_success(double overlap) { return 1.0 - overlap; }

double inconclusive_success(double overlap, double p) {
  const double a = 1.0 - p;
  const double b = overlap - p;
  return 0.5 * (a + std::sqrt(a * a - b * b));
}

StateEnsemble pure_pair(double overlap, double prior0) {
  ComplexVector a(2);
  a << 1.0, 0.0;
  ComplexVector b(2);
  b << overlap, std::sqrt(1.0 - overlap * overlap);
  return StateEnsemble::make({DensityOperator::pure(a), DensityOperator::pure(b)}, {prior0, 1.0 - prior0});
}

StateEnsemble trine() {
  std::vector<DensityOperator> states;
  for (int k = 0; k < 3; ++k) {
    const double t = 2.0 * M_PI * k / 3.0;
    ComplexVector v(2);
    v << std::cos(t), std::sin(t);
    states.push_back(DensityOperator::pure(v));
  }
  return StateEnsemble::equiprobable(std::move(states));
}

FiniteGroup trine_rotation_group(int constraints) {
  const double t = 2.0 * M_PI / 3.0;
  GroupElement g;
  g.id = "r";
  g.op = ComplexMatrix(2, 2);
  g.op << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  g.perm_M = {1, 2, 0};
  for (int j = 0; j < constraints; ++j) g.perm_J.push_back(j);
  return FiniteGroup::cyclic(g);
}

double bloch_grid_max(const DiscriminationProblem& problem, int points) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  auto value = [&](const ComplexMatrix& p0) {
    return trace_pair(problem.objective_op(0), HermitianOperator::symmetrized(p0)) +
           trace_pair(problem.objective_op(1), HermitianOperator::symmetrized(id - p0));
  };
  double best = std::max(value(id), value(ComplexMatrix::Zero(2, 2)));
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < points; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / points;
    const double r = std::sqrt(1.0 - z * z);
    const double phi = golden * i;
    const ComplexMatrix ns = r * std::cos(phi) * pauli(0) + r * std::sin(phi) * pauli(1) + z * pauli(2);
    best = std::max(best, value(0.5 * (id + ns)));
  }
  return best;
}

SimplexGridResult simplex_grid_min(const MinimaxProblem& problem, int steps) {
  SimplexGridResult out;
  out.value = std::numeric_limits<double>::infinity();
  const int k_count = problem.criteria();
  std::vector<int> counts(static_cast<std::size_t>(k_count), 0);
  std::function<void(int, int)> rec = [&](int k, int left) {
    if (k == k_count - 1) {
      counts[static_cast<std::size_t>(k)] = left;
      std::vector<double> mu(counts.size());
      for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = counts[i] / static_cast<double>(steps);
      const double v = f_star(problem, mu).first;
      ++out.evaluations;
      if (v < out.value) {
        out.value = v;
        out.argmin = mu;
      }
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[static_cast<std::size_t>(k)] = c;
      rec(k + 1, left - c);
    }
  };
  rec(0, steps);
  return out;
}

}  // namespace povmopt::oracle

namespace povmopt::fixtures {

namespace {

HermitianOperator random_hermitian(int d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = Complex(n(rng), n(rng));
  }
  return HermitianOperator::symmetrized(scale * 0.5 * (a + a.adjoint()));
}

}  // namespace

Povm random_povm(int dim, int outcomes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<HermitianOperator> ops;
  for (int m = 0; m < outcomes; ++m) {
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) g(i, j) = Complex(n(rng), n(rng));
    }
    ops.push_back(HermitianOperator::symmetrized(g * g.adjoint() + 0.05 * ComplexMatrix::Identity(dim, dim)));
  }
  return Povm::unchecked(std::move(ops)).completed();
}

DiscriminationProblem random_feasible_problem(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  const int d = std::uniform_int_distribution<int>(2, 4)(rng);
  const int m_count = std::uniform_int_distribution<int>(2, 5)(rng);
  const int j_count = std::uniform_int_distribution<int>(0, 3)(rng);
  std::uniform_real_distribution<double> slack(0.05, 0.5);

  std::vector<HermitianOperator> c;
  for (int m = 0; m < m_count; ++m) c.push_back(random_hermitian(d, rng));
  const Povm phi = random_povm(d, m_count, rng());
  std::vector<std::vector<HermitianOperator>> a;
  std::vector<double> b;
  for (int j = 0; j < j_count; ++j) {
    std::vector<HermitianOperator> row;
    double v = 0.0;
    for (int m = 0; m < m_count; ++m) {
      row.push_back(random_hermitian(d, rng, 0.5));
      v += trace_pair(row.back(), phi[m]);
    }
    a.push_back(std::move(row));
    b.push_back(v + slack(rng));
  }
  return DiscriminationProblem::make(std::move(c), std::move(a), std::move(b));
}

Povm perturb_povm(const Povm& povm, double fraction) {
  int big = 0;
  for (int m = 1; m < povm.size(); ++m) {
    if (povm[m].trace() > povm[big].trace()) big = m;
  }
  const int next = (big + 1) % povm.size();
  std::vector<HermitianOperator> ops = povm.outcomes();
  ops[static_cast<std::size_t>(next)] = ops[static_cast<std::size_t>(next)] + povm[big] * fraction;
  ops[static_cast<std::size_t>(big)] = povm[big] * (1.0 - fraction);
  return Povm::unchecked(std::move(ops));
}

ComplexMatrix finite_order_unitary(int dim, int n, std::uint64_t seed) {
  const ComplexMatrix v = random_unitary(dim, seed);
  Eigen::VectorXcd phases(dim);
  for (int j = 0; j < dim; ++j) {
    const int k = j == 0 ? 1 : j == 1 ? 0 : j % n;
    phases(j) = std::polar(1.0, 2.0 * M_PI * k / n);
  }
  return v * phases.asDiagonal() * v.adjoint();
}

CovariantEnsemble covariant_ensemble(int dim, int n, EnsembleKind kind, std::uint64_t seed) {
  const ComplexMatrix u = finite_order_unitary(dim, n, seed);
  const StateEnsemble base = random_ensemble(dim, 1, kind, seed + 17);
  std::vector<DensityOperator> states;
  ComplexMatrix power = ComplexMatrix::Identity(dim, dim);
  for (int k = 0; k < n; ++k) {
    states.push_back(DensityOperator::make(
        HermitianOperator::symmetrized(power * base.state(0).op().matrix() * power.adjoint())));
    power = u * power;
  }
  return {StateEnsemble::equiprobable(std::move(states)), u};
}

FiniteGroup cyclic_group(const ComplexMatrix& u, std::vector<int> perm_m, std::vector<int> perm_j,
                         std::optional<std::vector<int>> perm_k) {
  GroupElement g;
  g.id = "g";
  g.op = u;
  g.perm_M = std::move(perm_m);
  g.perm_J = std::move(perm_j);
  g.perm_K = std::move(perm_k);
  return FiniteGroup::cyclic(g);
}

std::vector<int> shift(int n, int total) {
  std::vector<int> p(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) p[static_cast<std::size_t>(i)] = i < n ? (i + 1) % n : i;
  return p;
}

}  // namespace povmopt::fixtures

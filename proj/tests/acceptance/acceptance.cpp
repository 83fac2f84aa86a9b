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


// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace {

using namespace povmopt;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

CertificateReport certify(const DiscriminationProblem& p, const SolverResult& r) {
  return r.faces.empty() ? check_statement2(p, r.povm, r.dual)
                         : check_statement2_on_face(p, r.povm, r.dual, r.faces);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void helstrom(Outcome& o) {
  const auto e = oracle::pure_pair(1.0 / std::sqrt(2.0));
  const auto p = build_min_error(e);
  const auto r = solve(p);
  const double expected = oracle::helstrom_success(e);
  const double got = success_probability(e, r.povm);
  o.require(r.status == SolverStatus::Optimal, "solver status");
  o.require(std::abs(got - expected) <= 1e-6, "success " + fmt(got));
  o.require(std::abs(expected - 0.8535534) <= 1e-6, "oracle value");
  o.require(certify(p, r).passed(), "certificate");
  o.detail << "success " << got << " vs " << expected;
}

void unambiguous(Outcome& o) {
  double worst = 0.0;
  for (double s : {0.3, 1.0 / std::sqrt(2.0), 0.9}) {
    const auto e = oracle::pure_pair(s);
    const auto r = solve(build_error_margin(e, 0.0));
    o.require(r.status == SolverStatus::Optimal, "solver status at s=" + fmt(s));
    const double err = std::abs(success_probability(e, r.povm) - oracle::idp_success(s));
    worst = std::max(worst, err);
    o.require(err <= 1e-6, "s=" + fmt(s) + " error " + fmt(err));
  }
  o.detail << "max |success - (1 - s)| " << fmt(worst);
}

void trine(Outcome& o) {
  const auto e = oracle::trine();
  const auto p = build_min_error(e);
  const auto plain = solve(p);
  const double s = success_probability(e, plain.povm);
  o.require(plain.status == SolverStatus::Optimal, "plain solve status");
  o.require(std::abs(s - 2.0 / 3.0) <= 1e-6, "success " + fmt(s));
  const auto cov = covariant_solve(p, oracle::trine_rotation_group());
  const double sc = success_probability(e, cov.result.povm);
  o.require(cov.result.status == SolverStatus::Optimal, "covariant solve status");
  o.require(cov.povm_residual <= tol::kCovarianceInput, "POVM covariance residual " + fmt(cov.povm_residual));
  o.require(std::abs(sc - s) <= 1e-8, "covariant value differs by " + fmt(sc - s));
  o.require(cov.certificate.passed(), "covariant certificate");
  o.detail << "success " << s << ", covariant " << sc << ", residual " << fmt(cov.povm_residual);
}

void strong_duality(Outcome& o) {
  double worst_gap = 0.0;
  double worst_weak = -1e300;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto p = fixtures::random_feasible_problem(seed);
    const auto r = solve(p);
    o.require(r.status == SolverStatus::Optimal, "seed " + std::to_string(seed) + " status");
    const double gap = std::abs(r.primal_value - r.dual_value) / (1.0 + std::abs(r.primal_value));
    worst_gap = std::max(worst_gap, gap);
    o.require(gap <= 1e-6, "seed " + std::to_string(seed) + " gap " + fmt(gap));
    // Feasible primal iterates never exceed any logged dual bound.
    double best_primal = -1e300;
    double least_dual = 1e300;
    for (const auto& log : r.trace) {
      if (log.phase != 2) continue;
      if (log.primal_violation <= 0.0) best_primal = std::max(best_primal, log.primal_objective);
      least_dual = std::min(least_dual, log.dual_bound);
    }
    least_dual = std::min(least_dual, r.dual_value);
    best_primal = std::max(best_primal, r.primal_value);
    const double excess = best_primal - least_dual;
    worst_weak = std::max(worst_weak, excess);
    o.require(excess <= 1e-9 * (1.0 + std::abs(r.primal_value)),
              "seed " + std::to_string(seed) + " weak duality excess " + fmt(excess));
  }
  o.detail << "100 instances, max relative gap " << fmt(worst_gap) << ", max weak-duality excess "
           << fmt(worst_weak);
}

void theorem2(Outcome& o) {
  int s2 = 0;
  int s3 = 0;
  int rejected = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto p = fixtures::random_feasible_problem(seed);
    const auto r = solve(p);
    if (r.status != SolverStatus::Optimal) {
      o.require(false, "seed " + std::to_string(seed) + " status");
      continue;
    }
    const auto rep2 = certify(p, r);
    const auto rep3 = r.faces.empty() ? check_statement3(p, r.povm, r.dual.lambda)
                                      : check_statement2_on_face(
                                            p, r.povm, build_statement3_certificate(p, r.povm, r.dual.lambda),
                                            r.faces);
    s2 += rep2.passed();
    s3 += rep3.passed();
    o.require(rep2.passed(), "seed " + std::to_string(seed) + " statement-2 certificate");
    o.require(rep3.passed(), "seed " + std::to_string(seed) + " statement-3 certificate");
    const auto bad = fixtures::perturb_povm(r.povm);
    const bool caught = !check_statement2(p, bad, r.dual).passed() &&
                        !check_statement3(p, bad, r.dual.lambda).passed();
    rejected += caught;
    o.require(caught, "seed " + std::to_string(seed) + " perturbed solution accepted");
  }
  o.detail << "statement 2 passed " << s2 << "/100, statement 3 passed " << s3 << "/100, perturbed rejected "
           << rejected << "/100";
}

void brute_force(Outcome& o) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto e = random_ensemble(2, 2, seed % 2 ? EnsembleKind::Mixed : EnsembleKind::Pure, seed + 500);
    const auto p = build_min_error(e);
    const auto r = solve(p);
    o.require(r.status == SolverStatus::Optimal, "seed " + std::to_string(seed) + " status");
    const double grid = oracle::bloch_grid_max(p, 10000);
    const double diff = std::abs(grid - r.primal_value);
    worst = std::max(worst, diff);
    o.require(diff <= 1e-3, "seed " + std::to_string(seed) + " grid differs by " + fmt(diff));
    o.require(grid <= r.primal_value + 1e-8, "seed " + std::to_string(seed) + " grid exceeds optimum");
  }
  o.detail << "20 qubit instances, max |grid - sdp| " << fmt(worst);
}

void minimax_equalizer(Outcome& o) {
  std::vector<std::pair<std::string, MinimaxProblem>> cases;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    const auto e = random_ensemble(2, k, EnsembleKind::Mixed, seed + 700);
    cases.emplace_back("bayes-" + std::to_string(seed),
                       build_minimax_bayes(e.states(), BayesCost::min_error(k)));
    std::vector<StateEnsemble> sets;
    for (int s = 0; s < k; ++s) sets.push_back(random_ensemble(2, 2, EnsembleKind::Mixed, seed * 10 + s + 800));
    cases.emplace_back("plural-" + std::to_string(seed), build_plural_sets(sets));
  }
  double worst_eq = 0.0;
  double worst_bracket = 0.0;
  for (const auto& [name, mp] : cases) {
    const auto s = solve_minimax(mp);
    o.require(s.status == SolverStatus::Optimal, name + " status");
    const auto rep = check_minimax(mp, s.mu, s.povm);
    worst_eq = std::max(worst_eq, rep.equalizer_residual);
    o.require(rep.equalizer_residual <= 1e-5, name + " equalizer residual " + fmt(rep.equalizer_residual));
    const auto grid = oracle::simplex_grid_min(mp, 50);
    const double above = grid.value - s.value;
    worst_bracket = std::max(worst_bracket, std::abs(above));
    o.require(above >= -1e-7 && above <= 2e-3, name + " grid bracket " + fmt(above));
  }
  o.detail << cases.size() << " instances, max equalizer residual " << fmt(worst_eq)
           << ", max |grid - solver| " << fmt(worst_bracket);
}

void bounded_inconclusive(Outcome& o) {
  double worst_oracle = 0.0;
  for (double s : {0.4, 0.6, 0.8}) {
    const auto e = oracle::pure_pair(s);
    for (double p : {0.0, 0.1, 0.3}) {
      const auto prob = build_bounded_inconclusive(e, p, 0.0);
      const auto r = solve(prob);
      const std::string tag = "s=" + fmt(s) + " p=" + fmt(p);
      o.require(r.status == SolverStatus::Optimal, tag + " status");
      const double err = std::abs(success_probability(e, r.povm) - oracle::inconclusive_success(s, p));
      worst_oracle = std::max(worst_oracle, err);
      o.require(err <= 1e-6, tag + " oracle error " + fmt(err));
      o.require(certify(prob, r).passed(), tag + " optimality conditions");
    }
  }
  int monotone_checks = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto e = random_ensemble(3, 3, EnsembleKind::Mixed, seed + 900);
    double prev = 1e300;
    for (int i = 0; i <= 10; ++i) {
      const double p = 0.05 * i;
      const auto prob = build_bounded_inconclusive(e, p, 0.0);
      const auto r = solve(prob);
      if (r.status != SolverStatus::Optimal) break;
      o.require(certify(prob, r).passed(), "seed " + std::to_string(seed) + " p=" + fmt(p) + " certificate");
      o.require(r.primal_value <= prev + 1e-7, "not monotone in p at " + fmt(p));
      prev = r.primal_value;
      ++monotone_checks;
    }
    prev = 1e300;
    for (int i = 0; i <= 10; ++i) {
      const double q = 0.05 * i;
      const auto prob = build_bounded_inconclusive(e, 0.1, q);
      const auto r = solve(prob);
      if (r.status != SolverStatus::Optimal) break;
      o.require(certify(prob, r).passed(), "seed " + std::to_string(seed) + " q=" + fmt(q) + " certificate");
      o.require(r.primal_value <= prev + 1e-7, "not monotone in q at " + fmt(q));
      prev = r.primal_value;
      ++monotone_checks;
    }
  }
  o.detail << "max oracle error " << fmt(worst_oracle) << ", " << monotone_checks << " monotonicity points";
}

void symmetry_fixed_points(Outcome& o) {
  double worst_idem = 0.0;
  double worst_obj = 0.0;
  int feasible = 0;
  for (std::uint64_t inst = 0; inst < 5; ++inst) {
    const auto ce = fixtures::covariant_ensemble(3, 3, EnsembleKind::Mixed, inst + 1000);
    const auto p = build_bounded_inconclusive(ce.ensemble, 0.05, 0.02);
    const auto group = fixtures::cyclic_group(ce.generator, fixtures::shift(3, 4), fixtures::shift(3, 4));
    const auto cov = check_problem_covariance(p, group);
    o.require(cov.covariant, "instance " + std::to_string(inst) + " not covariant: " + cov.message);
    int taken = 0;
    for (std::uint64_t seed = 0; seed < 500 && taken < 10; ++seed) {
      const auto phi = fixtures::random_povm(3, 4, inst * 1000 + seed);
      if (!is_feasible(p, phi).feasible) continue;
      ++taken;
      ++feasible;
      const auto k = average_povm(group, phi);
      const auto kk = average_povm(group, k);
      for (int m = 0; m < 4; ++m) worst_idem = std::max(worst_idem, distance(k[m], kk[m]));
      o.require(is_feasible(p, k).feasible, "averaged POVM infeasible");
      worst_obj = std::max(worst_obj, std::abs(objective_value(p, k) - objective_value(p, phi)));
    }
  }
  o.require(feasible >= 50, "only " + std::to_string(feasible) + " feasible samples");
  o.require(worst_idem <= 1e-10, "idempotence " + fmt(worst_idem));
  o.require(worst_obj <= 1e-9, "objective change " + fmt(worst_obj));
  o.detail << feasible << " feasible POVMs, idempotence " << fmt(worst_idem) << ", objective change "
           << fmt(worst_obj);
}

void minimax_symmetrization(Outcome& o) {
  struct Case {
    std::string name;
    MinimaxProblem problem;
    FiniteGroup group;
  };
  std::vector<Case> cases;
  {
    const double s = 0.6;
    const auto e = oracle::pure_pair(s);
    Eigen::Vector2d n(1.0 + s, std::sqrt(1.0 - s * s));
    n.normalize();
    const ComplexMatrix h = (2.0 * n * n.transpose() - Eigen::Matrix2d::Identity()).cast<Complex>();
    cases.push_back({"swap-bayes", build_minimax_bayes(e.states(), BayesCost::min_error(2)),
                     fixtures::cyclic_group(h, {1, 0}, {}, std::vector<int>{1, 0})});
  }
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    const auto ce = fixtures::covariant_ensemble(2, 3, EnsembleKind::Mixed, seed + 1100);
    cases.push_back({"inconclusive-" + std::to_string(seed), build_inconclusive_minimax(ce.ensemble.states(), 0.1),
                     fixtures::cyclic_group(ce.generator, fixtures::shift(3, 4), fixtures::shift(3, 3),
                                            fixtures::shift(3, 3))});
    const ComplexMatrix u = fixtures::finite_order_unitary(2, 2, seed + 1200);
    const auto a = random_ensemble(2, 2, EnsembleKind::Mixed, seed + 1300);
    std::vector<DensityOperator> moved;
    for (int m = 0; m < 2; ++m) {
      moved.push_back(DensityOperator::make(HermitianOperator::symmetrized(u * a.state(m).op().matrix() * u.adjoint())));
    }
    cases.push_back({"plural-" + std::to_string(seed),
                     build_plural_sets({a, StateEnsemble::make(moved, a.priors())}),
                     fixtures::cyclic_group(u, {0, 1}, {}, std::vector<int>{1, 0})});
  }
  double worst_cov = 0.0;
  for (const auto& c : cases) {
    const auto cov = check_problem_covariance(c.problem, c.group);
    o.require(cov.covariant, c.name + " not covariant: " + cov.message);
    const auto s = solve_minimax(c.problem);
    o.require(s.status == SolverStatus::Optimal, c.name + " status");
    const auto sym = symmetrize_minimax(c.problem, c.group, s);
    const double rw = weight_covariance_residual(c.group, sym.mu);
    const double rp = povm_covariance_residual(c.group, sym.povm);
    worst_cov = std::max({worst_cov, rw, rp});
    o.require(rw <= 1e-9 && rp <= 1e-9, c.name + " covariance residual " + fmt(std::max(rw, rp)));
    const auto rep = check_minimax(c.problem, sym.mu, sym.povm);
    o.require(rep.passed(), c.name + " check_minimax: " + rep.message);
  }
  o.detail << cases.size() << " covariant instances, max covariance residual " << fmt(worst_cov);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"Helstrom oracle", helstrom},
      {"unambiguous discrimination oracle", unambiguous},
      {"trine oracle and covariant solve", trine},
      {"strong and weak duality", strong_duality},
      {"optimality certificate equivalence", theorem2},
      {"Bloch-grid brute force", brute_force},
      {"minimax equalizer and simplex grid", minimax_equalizer},
      {"bounded-inconclusive consistency", bounded_inconclusive},
      {"symmetry fixed points", symmetry_fixed_points},
      {"minimax symmetrization", minimax_symmetrization},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %2zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

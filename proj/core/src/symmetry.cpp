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

#include "povmopt/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "povmopt/errors.hpp"

namespace povmopt {

namespace {

constexpr double kMatchTol = 1e-8;

std::vector<int> iota(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<int> compose_perm(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[static_cast<std::size_t>(inner[i])];
  return out;
}

bool is_bijection(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

ComplexMatrix conjugate_by(const GroupElement& g, const ComplexMatrix& a) {
  return g.antiunitary ? (g.op * a.conjugate() * g.op.adjoint()).eval()
                       : (g.op * a * g.op.adjoint()).eval();
}

// Images of an orthonormal Hermitian basis; two elements act identically on
// operators exactly when these agree.
std::vector<ComplexMatrix> signature(const GroupElement& g) {
  const int d = g.dim();
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(d * d));
  const double r = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < d; ++k) {
    for (int l = k; l < d; ++l) {
      ComplexMatrix b = ComplexMatrix::Zero(d, d);
      if (k == l) {
        b(k, k) = 1.0;
        out.push_back(conjugate_by(g, b));
        continue;
      }
      b(k, l) = r;
      b(l, k) = r;
      out.push_back(conjugate_by(g, b));
      b(k, l) = Complex(0.0, -r);
      b(l, k) = Complex(0.0, r);
      out.push_back(conjugate_by(g, b));
    }
  }
  return out;
}

double signature_distance(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a[i] - b[i]).norm());
  return worst;
}

bool same_perms(const GroupElement& a, const GroupElement& b) {
  return a.perm_M == b.perm_M && a.perm_J == b.perm_J && a.perm_K == b.perm_K;
}

std::string name_of(const GroupElement& g, int index) {
  return g.id.empty() ? "#" + std::to_string(index) : g.id;
}

void validate_element(const GroupElement& g, const GroupElement& first, int index) {
  const std::string who = "group element " + name_of(g, index);
  if (g.op.rows() == 0 || g.op.rows() != g.op.cols()) throw InvalidGroup(who + ": operator is not square");
  if (g.dim() != first.dim()) throw InvalidGroup(who + ": operator dimension differs");
  const double unitarity = (g.op * g.op.adjoint() - ComplexMatrix::Identity(g.dim(), g.dim())).norm();
  if (unitarity > tol::kUnitary) {
    std::ostringstream msg;
    msg << who << ": operator is not unitary (residual " << unitarity << ")";
    throw InvalidGroup(msg.str());
  }
  if (g.perm_M.size() != first.perm_M.size() || g.perm_J.size() != first.perm_J.size() ||
      g.perm_K.has_value() != first.perm_K.has_value() ||
      (g.perm_K && g.perm_K->size() != first.perm_K->size())) {
    throw InvalidGroup(who + ": permutation sizes differ between elements");
  }
  if (!is_bijection(g.perm_M) || !is_bijection(g.perm_J) || (g.perm_K && !is_bijection(*g.perm_K))) {
    throw InvalidGroup(who + ": a permutation is not a bijection");
  }
}

}  // namespace

GroupElement GroupElement::identity(int dim, int outcomes, int constraints, std::optional<int> criteria) {
  GroupElement e;
  e.id = "e";
  e.op = ComplexMatrix::Identity(dim, dim);
  e.perm_M = iota(outcomes);
  e.perm_J = iota(constraints);
  if (criteria) e.perm_K = iota(*criteria);
  return e;
}

GroupElement compose(const GroupElement& g, const GroupElement& h, std::string id) {
  if (g.dim() != h.dim()) throw DimMismatch("cannot compose elements of different dimension");
  GroupElement out;
  out.id = id.empty() ? g.id + "*" + h.id : std::move(id);
  out.op = g.antiunitary ? (g.op * h.op.conjugate()).eval() : (g.op * h.op).eval();
  out.antiunitary = g.antiunitary != h.antiunitary;
  out.perm_M = compose_perm(g.perm_M, h.perm_M);
  out.perm_J = compose_perm(g.perm_J, h.perm_J);
  if (g.perm_K && h.perm_K) out.perm_K = compose_perm(*g.perm_K, *h.perm_K);
  return out;
}

HermitianOperator act(const GroupElement& g, const HermitianOperator& a) {
  if (g.dim() != a.dim()) {
    std::ostringstream msg;
    msg << "group element acts on dimension " << g.dim() << ", operator has " << a.dim();
    throw DimMismatch(msg.str());
  }
  const ComplexMatrix out = conjugate_by(g, a.matrix());
  return HermitianOperator::from_matrix(out, tol::kHermitian * (1.0 + a.frobenius_norm()));
}

FiniteGroup FiniteGroup::make(std::vector<GroupElement> elements) {
  if (elements.empty()) throw InvalidGroup("a group needs at least one element");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    validate_element(elements[i], elements.front(), static_cast<int>(i));
  }
  const int n = static_cast<int>(elements.size());
  const int d = elements.front().dim();

  FiniteGroup group;
  group.identity_ = -1;
  for (int i = 0; i < n; ++i) {
    const auto& g = elements[static_cast<std::size_t>(i)];
    const bool trivial_perms = g.perm_M == iota(static_cast<int>(g.perm_M.size())) &&
                               g.perm_J == iota(static_cast<int>(g.perm_J.size())) &&
                               (!g.perm_K || *g.perm_K == iota(static_cast<int>(g.perm_K->size())));
    if (!g.antiunitary && trivial_perms &&
        (g.op - ComplexMatrix::Identity(d, d)).norm() <= tol::kUnitary) {
      group.identity_ = i;
      break;
    }
  }
  if (group.identity_ < 0) {
    throw InvalidGroup("no identity element (unit operator, unitary, identity permutations)");
  }

  std::vector<std::vector<ComplexMatrix>> sigs;
  sigs.reserve(elements.size());
  for (const auto& g : elements) sigs.push_back(signature(g));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (signature_distance(sigs[static_cast<std::size_t>(i)], sigs[static_cast<std::size_t>(j)]) <= kMatchTol) {
        throw InvalidGroup("elements " + name_of(elements[static_cast<std::size_t>(i)], i) + " and " +
                           name_of(elements[static_cast<std::size_t>(j)], j) +
                           " act identically on operators (action is not faithful)");
      }
    }
  }

  group.table_.assign(static_cast<std::size_t>(n * n), -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& g = elements[static_cast<std::size_t>(i)];
      const auto& h = elements[static_cast<std::size_t>(j)];
      const GroupElement gh = compose(g, h);
      const auto sig = signature(gh);
      int match = -1;
      for (int k = 0; k < n; ++k) {
        if (signature_distance(sig, sigs[static_cast<std::size_t>(k)]) <= kMatchTol) {
          match = k;
          break;
        }
      }
      if (match < 0) {
        throw InvalidGroup("product " + name_of(g, i) + "*" + name_of(h, j) + " is not in the group");
      }
      if (!same_perms(gh, elements[static_cast<std::size_t>(match)])) {
        throw InvalidGroup("product " + name_of(g, i) + "*" + name_of(h, j) +
                           " matches element " + name_of(elements[static_cast<std::size_t>(match)], match) +
                           " on operators but not on index permutations");
      }
      group.table_[static_cast<std::size_t>(i * n + j)] = match;
    }
  }

  group.inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (group.table_[static_cast<std::size_t>(i * n + j)] == group.identity_) {
        group.inverse_[static_cast<std::size_t>(i)] = j;
        break;
      }
    }
    if (group.inverse_[static_cast<std::size_t>(i)] < 0) {
      throw InvalidGroup("element " + name_of(elements[static_cast<std::size_t>(i)], i) + " has no inverse");
    }
  }
  group.elements_ = std::move(elements);
  return group;
}

FiniteGroup FiniteGroup::trivial(int dim, int outcomes, int constraints, std::optional<int> criteria) {
  return make({GroupElement::identity(dim, outcomes, constraints, criteria)});
}

FiniteGroup FiniteGroup::cyclic(const GroupElement& generator, int max_order) {
  const int d = generator.dim();
  validate_element(generator, generator, 0);
  GroupElement e = GroupElement::identity(d, static_cast<int>(generator.perm_M.size()),
                                          static_cast<int>(generator.perm_J.size()),
                                          generator.perm_K ? std::optional<int>(static_cast<int>(generator.perm_K->size()))
                                                           : std::nullopt);
  const auto id_sig = signature(e);
  std::vector<GroupElement> elements{e};
  GroupElement power = generator;
  const std::string base = generator.id.empty() ? "g" : generator.id;
  for (int k = 1; k <= max_order; ++k) {
    if (signature_distance(signature(power), id_sig) <= kMatchTol) {
      if (!same_perms(power, e)) {
        throw InvalidGroup("generator order on operators differs from its order on index sets");
      }
      return make(std::move(elements));
    }
    power.id = k == 1 ? base : base + "^" + std::to_string(k);
    elements.push_back(power);
    power = compose(generator, power);
  }
  throw InvalidGroup("generator order exceeds " + std::to_string(max_order));
}

namespace {

void record(CovarianceReport& rep, double residual, double tolerance, int g, int row, int outcome,
            const char* kind) {
  if (residual > rep.max_residual) {
    rep.max_residual = residual;
    if (residual > tolerance) {
      rep.covariant = false;
      rep.element = g;
      rep.row = row;
      rep.outcome = outcome;
      rep.kind = kind;
    }
  }
}

CovarianceReport shape_failure(std::string message) {
  CovarianceReport rep;
  rep.covariant = false;
  rep.kind = "shape";
  rep.message = std::move(message);
  return rep;
}

void check_constraints(const DiscriminationProblem& p, const FiniteGroup& group, double tolerance,
                       CovarianceReport& rep) {
  for (int gi = 0; gi < group.size(); ++gi) {
    const auto& g = group.element(gi);
    for (int j = 0; j < p.constraints(); ++j) {
      const int gj = g.perm_J[static_cast<std::size_t>(j)];
      for (int m = 0; m < p.outcomes(); ++m) {
        const int gm = g.perm_M[static_cast<std::size_t>(m)];
        record(rep, distance(act(g, p.constraint_op(j, m)), p.constraint_op(gj, gm)), tolerance, gi, j,
               m, "constraint");
      }
      record(rep, std::abs(p.bound(j) - p.bound(gj)), tolerance, gi, j, -1, "bound");
    }
  }
}

void finish(CovarianceReport& rep, const FiniteGroup& group, double tolerance) {
  if (rep.covariant) return;
  std::ostringstream msg;
  msg << rep.kind << " covariance fails for element " << name_of(group.element(rep.element), rep.element);
  if (rep.row >= 0) msg << (rep.kind.rfind("criterion", 0) == 0 || rep.kind == "offset" ? ", k=" : ", j=") << rep.row;
  if (rep.outcome >= 0) msg << ", m=" << rep.outcome;
  msg << " (residual " << rep.max_residual << " > " << tolerance << ")";
  rep.message = msg.str();
}

}  // namespace

CovarianceReport check_problem_covariance(const DiscriminationProblem& problem, const FiniteGroup& group,
                                          double tolerance) {
  if (group.dim() != problem.dim()) return shape_failure("group dimension differs from problem dimension");
  if (group.outcomes() != problem.outcomes()) return shape_failure("perm_M size differs from outcome count");
  if (group.constraints() != problem.constraints()) {
    return shape_failure("perm_J size differs from constraint count");
  }
  CovarianceReport rep;
  for (int gi = 0; gi < group.size(); ++gi) {
    const auto& g = group.element(gi);
    for (int m = 0; m < problem.outcomes(); ++m) {
      const int gm = g.perm_M[static_cast<std::size_t>(m)];
      record(rep, distance(act(g, problem.objective_op(m)), problem.objective_op(gm)), tolerance, gi, -1, m,
             "objective");
    }
  }
  check_constraints(problem, group, tolerance, rep);
  finish(rep, group, tolerance);
  return rep;
}

CovarianceReport check_problem_covariance(const MinimaxProblem& problem, const FiniteGroup& group,
                                          double tolerance) {
  const auto& feas = problem.feasible_set();
  if (group.dim() != problem.dim()) return shape_failure("group dimension differs from problem dimension");
  if (group.outcomes() != problem.outcomes()) return shape_failure("perm_M size differs from outcome count");
  if (group.constraints() != problem.constraints()) {
    return shape_failure("perm_J size differs from constraint count");
  }
  if (!group.acts_on_criteria() || group.criteria() != problem.criteria()) {
    return shape_failure("perm_K is missing or its size differs from the criterion count");
  }
  CovarianceReport rep;
  for (int gi = 0; gi < group.size(); ++gi) {
    const auto& g = group.element(gi);
    for (int k = 0; k < problem.criteria(); ++k) {
      const int gk = (*g.perm_K)[static_cast<std::size_t>(k)];
      for (int m = 0; m < problem.outcomes(); ++m) {
        const int gm = g.perm_M[static_cast<std::size_t>(m)];
        record(rep, distance(act(g, problem.criterion_op(k, m)), problem.criterion_op(gk, gm)), tolerance, gi,
               k, m, "criterion");
      }
      record(rep, std::abs(problem.offset(k) - problem.offset(gk)), tolerance, gi, k, -1, "offset");
    }
  }
  check_constraints(feas, group, tolerance, rep);
  finish(rep, group, tolerance);
  return rep;
}

namespace {

void require_outcomes(const FiniteGroup& group, const Povm& phi) {
  if (phi.dim() != group.dim()) throw DimMismatch("POVM dimension differs from group dimension");
  if (phi.size() != group.outcomes()) throw OutcomeCountMismatch("POVM outcome count differs from perm_M size");
}

}  // namespace

Povm kappa_g(const FiniteGroup& group, int g, const Povm& phi) {
  require_outcomes(group, phi);
  const auto& inv = group.element(group.inverse(g));
  const auto& perm = group.element(g).perm_M;
  std::vector<HermitianOperator> out;
  for (int m = 0; m < phi.size(); ++m) out.push_back(act(inv, phi[perm[static_cast<std::size_t>(m)]]));
  return Povm::unchecked(std::move(out));
}

Povm average_povm(const FiniteGroup& group, const Povm& phi) {
  require_outcomes(group, phi);
  const int d = phi.dim();
  std::vector<ComplexMatrix> sum(static_cast<std::size_t>(phi.size()), ComplexMatrix::Zero(d, d));
  for (int g = 0; g < group.size(); ++g) {
    const Povm term = kappa_g(group, g, phi);
    for (int m = 0; m < phi.size(); ++m) sum[static_cast<std::size_t>(m)] += term[m].matrix();
  }
  std::vector<HermitianOperator> out;
  for (auto& s : sum) out.push_back(HermitianOperator::symmetrized(s / static_cast<double>(group.size())));
  return Povm::unchecked(std::move(out));
}

double povm_covariance_residual(const FiniteGroup& group, const Povm& povm) {
  require_outcomes(group, povm);
  double worst = 0.0;
  for (const auto& g : group.elements()) {
    for (int m = 0; m < povm.size(); ++m) {
      worst = std::max(worst, distance(act(g, povm[m]), povm[g.perm_M[static_cast<std::size_t>(m)]]));
    }
  }
  return worst;
}

double weight_covariance_residual(const FiniteGroup& group, std::span<const double> mu) {
  if (!group.acts_on_criteria() || static_cast<std::size_t>(group.criteria()) != mu.size()) {
    throw LengthMismatch("mu length differs from perm_K size");
  }
  double worst = 0.0;
  for (const auto& g : group.elements()) {
    for (std::size_t k = 0; k < mu.size(); ++k) {
      worst = std::max(worst, std::abs(mu[k] - mu[static_cast<std::size_t>((*g.perm_K)[k])]));
    }
  }
  return worst;
}

double dual_covariance_residual(const FiniteGroup& group, const DualCertificate& dual) {
  double worst = 0.0;
  for (const auto& g : group.elements()) {
    worst = std::max(worst, distance(act(g, dual.X), dual.X));
    for (std::size_t j = 0; j < dual.lambda.size(); ++j) {
      worst = std::max(worst, std::abs(dual.lambda[j] - dual.lambda[static_cast<std::size_t>(g.perm_J[j])]));
    }
  }
  return worst;
}

DualCertificate symmetrize_dual(const FiniteGroup& group, const DualCertificate& dual) {
  if (dual.X.dim() != group.dim()) throw DimMismatch("dual operator dimension differs from group dimension");
  if (dual.lambda.size() != static_cast<std::size_t>(group.constraints())) {
    throw LengthMismatch("lambda length differs from perm_J size");
  }
  const double n = static_cast<double>(group.size());
  ComplexMatrix x = ComplexMatrix::Zero(group.dim(), group.dim());
  std::vector<double> lambda(dual.lambda.size(), 0.0);
  for (int gi = 0; gi < group.size(); ++gi) {
    const auto& g = group.element(gi);
    x += act(g, dual.X).matrix();
    const auto& inv = group.element(group.inverse(gi)).perm_J;
    for (std::size_t j = 0; j < lambda.size(); ++j) lambda[j] += dual.lambda[static_cast<std::size_t>(inv[j])];
  }
  for (auto& v : lambda) v /= n;
  return {HermitianOperator::symmetrized(x / n), std::move(lambda)};
}

CovariantSolveResult covariant_solve(const DiscriminationProblem& problem, const FiniteGroup& group,
                                     const SolverConfig& config, double objective_tol) {
  CovarianceReport cov = check_problem_covariance(problem, group);
  if (!cov.covariant) throw CovarianceViolation(cov.message);

  CovariantSolveResult out(solve(problem, config));
  out.covariance = std::move(cov);
  SolverResult& r = out.result;
  out.objective_before = objective_value(problem, r.povm);
  if (r.status != SolverStatus::Optimal) {
    out.objective_after = out.objective_before;
    return out;
  }
  r.povm = average_povm(group, r.povm);
  r.dual = symmetrize_dual(group, r.dual);
  out.objective_after = objective_value(problem, r.povm);
  r.primal_value += out.objective_after - out.objective_before;
  out.objective_preserved = std::abs(out.objective_after - out.objective_before) <= objective_tol;
  out.povm_residual = povm_covariance_residual(group, r.povm);
  out.dual_residual = dual_covariance_residual(group, r.dual);
  out.certificate = r.faces.empty() ? check_statement2(problem, r.povm, r.dual)
                                    : check_statement2_on_face(problem, r.povm, r.dual, r.faces);
  if (!out.objective_preserved) {
    std::ostringstream msg;
    msg << "averaging changed the objective by " << out.objective_after - out.objective_before;
    r.message = r.message.empty() ? msg.str() : r.message + "; " + msg.str();
  }
  return out;
}

MinimaxSolution symmetrize_minimax(const MinimaxProblem& problem, const FiniteGroup& group,
                                   const MinimaxSolution& solution) {
  const CovarianceReport cov = check_problem_covariance(problem, group);
  if (!cov.covariant) throw CovarianceViolation(cov.message);
  if (solution.mu.size() != static_cast<std::size_t>(problem.criteria())) {
    throw LengthMismatch("mu length differs from criterion count");
  }
  MinimaxSolution out(average_povm(group, solution.povm));
  out.status = solution.status;
  out.epigraph_value = solution.epigraph_value;
  out.mu_fallback = solution.mu_fallback;
  out.iterations = solution.iterations;
  out.gap = solution.gap;
  out.message = solution.message;
  out.mu.assign(solution.mu.size(), 0.0);
  for (const auto& g : group.elements()) {
    for (std::size_t k = 0; k < out.mu.size(); ++k) {
      out.mu[k] += solution.mu[static_cast<std::size_t>((*g.perm_K)[k])];
    }
  }
  for (auto& v : out.mu) v /= static_cast<double>(group.size());
  out.per_criterion = criterion_values(problem, out.povm);
  out.value = *std::min_element(out.per_criterion.begin(), out.per_criterion.end());
  for (std::size_t k = 0; k < out.mu.size(); ++k) {
    if (out.mu[k] > tol::kSupport) out.support.push_back(static_cast<int>(k));
  }
  return out;
}

}  // namespace povmopt

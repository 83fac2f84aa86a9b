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

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "povmopt/errors.hpp"
#include "povmopt/sdp.hpp"

namespace povmopt {

void SolverConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidParameter(std::string(name) + " must be positive and finite");
    }
  };
  positive(gap_tol, "gap_tol");
  positive(feas_tol, "feas_tol");
  positive(infeasibility_threshold, "infeasibility_threshold");
  if (max_iters < 1) throw InvalidParameter("max_iters must be >= 1");
  if (!(step_fraction > 0.0 && step_fraction < 1.0)) {
    throw InvalidParameter("step_fraction must lie in (0, 1)");
  }
}

std::string to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::Optimal: return "optimal";
    case SolverStatus::Infeasible: return "infeasible";
    case SolverStatus::IterationLimit: return "iteration_limit";
    case SolverStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

DualCertificate extract_dual(const SdpStandardForm& form, const SdpIterate& raw, double feas_tol) {
  const int d = form.dim;
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < form.completeness_rows(); ++i) {
    const int row = form.basis_row[static_cast<std::size_t>(i)];
    if (row >= 0) x -= raw.y(row) * form.basis[static_cast<std::size_t>(i)].matrix();
  }
  const auto& base = form.program.base;
  std::vector<double> lambda(static_cast<std::size_t>(base.constraints()), 0.0);
  for (int j = 0; j < base.constraints(); ++j) {
    const auto& map = form.row_map[static_cast<std::size_t>(j)];
    if (map.sdp_row < 0) continue;
    const double w = raw.y(map.sdp_row);
    double l = map.slack < 0 ? std::max(-map.sign * w, 0.0) : -w;
    if (l < 0.0 && l >= -feas_tol) l = 0.0;
    lambda[static_cast<std::size_t>(j)] = l;
  }
  return {HermitianOperator::symmetrized(x), std::move(lambda)};
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double inner(const MatrixXd& a, const MatrixXd& b) { return (a.array() * b.array()).sum(); }

// Projects onto symmetric matrices commuting with the embedded imaginary unit.
MatrixXd project_structure(const MatrixXd& y) {
  const Eigen::Index d = y.rows() / 2;
  const MatrixXd s = 0.5 * (y + y.transpose());
  MatrixXd p(2 * d, 2 * d);
  const MatrixXd re = 0.5 * (s.topLeftCorner(d, d) + s.bottomRightCorner(d, d));
  const MatrixXd im = 0.5 * (s.bottomLeftCorner(d, d) - s.topRightCorner(d, d));
  p.topLeftCorner(d, d) = re;
  p.bottomRightCorner(d, d) = re;
  p.bottomLeftCorner(d, d) = im;
  p.topRightCorner(d, d) = -im;
  return p;
}

// Largest alpha with x + alpha dx >= 0 given the Cholesky factor of x.
double max_step(const Eigen::LLT<MatrixXd>& chol, const MatrixXd& dx) {
  const auto l = chol.matrixL();
  MatrixXd t = l.solve(dx);
  t = l.solve(t.transpose()).eval();
  t = 0.5 * (t + t.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(t, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

double max_step_lp(const VectorXd& x, const VectorXd& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx(i) < 0.0) a = std::min(a, -x(i) / dx(i));
  }
  return a;
}

struct Evaluation {
  std::optional<Povm> povm;
  std::vector<double> extras;
  double primal_value = 0.0;
  double completeness = 0.0;
  double max_row_violation = 0.0;
  std::optional<DualCertificate> dual;
  double dual_value = std::numeric_limits<double>::infinity();
  double dual_shift = 0.0;
};

void score_primal(const PovmProgram& prog, Evaluation& ev) {
  const auto& base = prog.base;
  ev.completeness = ev.povm->residuals().completeness;
  ev.primal_value = objective_value(base, *ev.povm) + prog.objective_offset;
  for (int e = 0; e < prog.extra(); ++e) {
    ev.primal_value += prog.extra_objective[static_cast<std::size_t>(e)] * ev.extras[static_cast<std::size_t>(e)];
  }
  const auto values = constraint_values(base, *ev.povm);
  ev.max_row_violation = base.constraints() > 0 ? -std::numeric_limits<double>::infinity() : 0.0;
  for (int j = 0; j < base.constraints(); ++j) {
    double v = values[static_cast<std::size_t>(j)] - base.bound(j);
    for (int e = 0; e < prog.extra(); ++e) v += prog.extra_coefficients(j, e) * ev.extras[static_cast<std::size_t>(e)];
    ev.max_row_violation = std::max(ev.max_row_violation, v);
  }
}

// Completes the primal POVM and turns the dual into an exactly feasible
// certificate whose value bounds the program optimum from above.
Evaluation evaluate(const SdpStandardForm& form, const SdpIterate& it, double feas_tol) {
  const PovmProgram& prog = form.program;
  const auto& base = prog.base;
  Evaluation ev;
  for (int e = 0; e < prog.extra(); ++e) ev.extras.push_back(it.x_lp(form.extra_offset() + e));

  try {
    ev.povm = Povm::unchecked(lift_outcomes(form, it.x_blocks)).completed();
  } catch (const Error&) {
    ev.povm.reset();
  }
  if (ev.povm) score_primal(prog, ev);

  DualCertificate cert = extract_dual(form, it, feas_tol);
  for (auto& l : cert.lambda) l = std::max(l, 0.0);
  bool bounded = true;
  // Extra variables need sum_j lambda_j h_{j,e} >= g_e.
  double factor = 1.0;
  for (int e = 0; e < prog.extra(); ++e) {
    const double g = prog.extra_objective[static_cast<std::size_t>(e)];
    double s = 0.0;
    bool nonneg = true;
    for (int j = 0; j < base.constraints(); ++j) {
      const double h = prog.extra_coefficients(j, e);
      s += cert.lambda[static_cast<std::size_t>(j)] * h;
      if (h < 0.0) nonneg = false;
    }
    if (s >= g) continue;
    if (s > 0.0 && nonneg) {
      factor = std::max(factor, g / s);
    } else {
      bounded = false;
    }
  }
  if (factor > 1.0) {
    for (int j = 0; j < base.constraints(); ++j) {
      bool touches = false;
      for (int e = 0; e < prog.extra(); ++e) touches = touches || prog.extra_coefficients(j, e) != 0.0;
      if (touches) cert.lambda[static_cast<std::size_t>(j)] *= factor;
    }
  }
  const auto z = [&] {
    std::vector<HermitianOperator> out;
    for (int m = 0; m < base.outcomes(); ++m) {
      ComplexMatrix zm = base.objective_op(m).matrix();
      for (int j = 0; j < base.constraints(); ++j) {
        const double l = cert.lambda[static_cast<std::size_t>(j)];
        if (l != 0.0) zm -= l * base.constraint_op(j, m).matrix();
      }
      out.push_back(HermitianOperator::symmetrized(zm));
    }
    return out;
  }();
  double shift = 0.0;
  for (int b = 0; b < form.blocks(); ++b) {
    const int m = form.block_outcome[static_cast<std::size_t>(b)];
    const ComplexMatrix& v = form.faces[static_cast<std::size_t>(m)];
    const HermitianOperator gap = cert.X - z[static_cast<std::size_t>(m)];
    const double lmin = form.reduced() ? min_eigenvalue(HermitianOperator::symmetrized(v.adjoint() * gap.matrix() * v))
                                       : min_eigenvalue(gap);
    shift = std::max(shift, -lmin);
  }
  if (shift > 0.0) cert.X = cert.X + HermitianOperator::identity(form.dim) * shift;
  ev.dual_shift = shift;
  if (bounded) {
    double v = cert.X.trace() + prog.objective_offset;
    for (int j = 0; j < base.constraints(); ++j) v += cert.lambda[static_cast<std::size_t>(j)] * base.bound(j);
    ev.dual_value = v;
  }
  ev.dual = std::move(cert);
  return ev;
}

}  // namespace

struct InteriorPointSolver::Workspace {
  const SdpStandardForm& form;
  int blocks = 0;
  std::vector<int> n;
  int m = 0;
  int lp = 0;
  // a[i][b]: coefficient block of row i on block b, or nullptr.
  std::vector<std::vector<const MatrixXd*>> a;
  MatrixXd a_lp;

  explicit Workspace(const SdpStandardForm& f)
      : form(f), blocks(f.blocks()), n(f.block_dims), m(f.row_count()), lp(f.lp_dim) {
    a.assign(static_cast<std::size_t>(m), std::vector<const MatrixXd*>(static_cast<std::size_t>(blocks), nullptr));
    a_lp = MatrixXd::Zero(m, lp);
    for (int i = 0; i < m; ++i) {
      const auto& row = f.rows[static_cast<std::size_t>(i)];
      for (const auto& [b, mat] : row.blocks) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] = &mat;
      for (const auto& [l, c] : row.lp) a_lp(i, l) = c;
    }
  }

  VectorXd apply(const std::vector<MatrixXd>& x, const VectorXd& x_lp) const {
    VectorXd r = a_lp * x_lp;
    for (int i = 0; i < m; ++i) {
      for (int b = 0; b < blocks; ++b) {
        if (const MatrixXd* ab = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)]) {
          r(i) += inner(*ab, x[static_cast<std::size_t>(b)]);
        }
      }
    }
    return r;
  }

  void apply_adjoint(const VectorXd& y, std::vector<MatrixXd>& out, VectorXd& out_lp) const {
    out.resize(static_cast<std::size_t>(blocks));
    for (int b = 0; b < blocks; ++b) out[static_cast<std::size_t>(b)] = MatrixXd::Zero(n[static_cast<std::size_t>(b)], n[static_cast<std::size_t>(b)]);
    for (int i = 0; i < m; ++i) {
      if (y(i) == 0.0) continue;
      for (int b = 0; b < blocks; ++b) {
        if (const MatrixXd* ab = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)]) {
          out[static_cast<std::size_t>(b)].noalias() += y(i) * *ab;
        }
      }
    }
    out_lp = a_lp.transpose() * y;
  }
};

struct InteriorPointSolver::PhaseOutcome {
  enum class Kind { Converged, Stalled, IterationLimit, Diverged, Failure };
  Kind kind = Kind::Failure;
  SdpIterate iterate;
  int iterations = 0;
  double sdp_primal = 0.0;
  double sdp_dual = 0.0;
  double complex_structure = 0.0;
  std::string message;
};

InteriorPointSolver::InteriorPointSolver(SolverConfig config) : config_(config) { config_.validate(); }

InteriorPointSolver::PhaseOutcome InteriorPointSolver::run(const SdpStandardForm& form, int phase,
                                                           std::vector<IterateLog>* trace) {
  using Kind = PhaseOutcome::Kind;
  Workspace ws(form);
  const auto& prog = form.program;
  const auto& base = prog.base;
  const int nb = ws.blocks;
  const int outcomes = form.outcomes();
  double ntot = static_cast<double>(ws.lp);
  for (int nbk : ws.n) ntot += nbk;
  auto size_of = [&](int b) { return ws.n[static_cast<std::size_t>(b)]; };

  // Primal start: uniform POVM, slacks max(b - value, 1), extras 1.
  SdpIterate it;
  for (int b = 0; b < nb; ++b) {
    it.x_blocks.push_back(MatrixXd::Identity(size_of(b), size_of(b)) / static_cast<double>(outcomes));
  }
  it.x_lp = VectorXd::Ones(ws.lp);
  {
    const Povm uniform = Povm::uniform(form.dim, outcomes);
    const auto values = constraint_values(base, uniform);
    for (int j = 0; j < base.constraints(); ++j) {
      const auto& map = form.row_map[static_cast<std::size_t>(j)];
      if (map.slack < 0) continue;
      double v = values[static_cast<std::size_t>(j)];
      for (int e = 0; e < prog.extra(); ++e) v += prog.extra_coefficients(j, e);
      it.x_lp(map.slack) = std::max(base.bound(j) - v, 1.0);
    }
  }
  // Dual start: X = (1 + max_m ||z_m(1)||) 1, lambda = 1 on inequality rows.
  {
    std::vector<double> ones(static_cast<std::size_t>(base.constraints()), 0.0);
    for (int j = 0; j < base.constraints(); ++j) {
      if (form.row_map[static_cast<std::size_t>(j)].slack >= 0) ones[static_cast<std::size_t>(j)] = 1.0;
    }
    double zmax = 0.0;
    for (int m = 0; m < outcomes; ++m) {
      ComplexMatrix zm = base.objective_op(m).matrix();
      for (int j = 0; j < base.constraints(); ++j) zm -= ones[static_cast<std::size_t>(j)] * base.constraint_op(j, m).matrix();
      const auto ev = eigenvalues(HermitianOperator::symmetrized(zm));
      zmax = std::max(zmax, ev.cwiseAbs().maxCoeff());
    }
    const double scale = 1.0 + zmax;
    it.y = VectorXd::Zero(ws.m);
    for (int i = 0; i < form.completeness_rows(); ++i) {
      const int row = form.basis_row[static_cast<std::size_t>(i)];
      if (row >= 0) it.y(row) = -scale * form.basis[static_cast<std::size_t>(i)].trace();
    }
    for (int j = 0; j < base.constraints(); ++j) {
      const auto& map = form.row_map[static_cast<std::size_t>(j)];
      if (map.sdp_row >= 0 && map.slack >= 0) it.y(map.sdp_row) = -1.0;
    }
    std::vector<MatrixXd> aty;
    VectorXd aty_lp;
    ws.apply_adjoint(it.y, aty, aty_lp);
    it.z_blocks.resize(static_cast<std::size_t>(nb));
    for (int b = 0; b < nb; ++b) {
      MatrixXd zb = project_structure(form.cost_blocks[static_cast<std::size_t>(b)] - aty[static_cast<std::size_t>(b)]);
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(zb, Eigen::EigenvaluesOnly);
      const double lmin = es.eigenvalues()(0);
      if (lmin < 0.5) zb.diagonal().array() += 0.5 + scale - lmin;
      it.z_blocks[static_cast<std::size_t>(b)] = std::move(zb);
    }
    it.z_lp = form.cost_lp - aty_lp;
    for (Eigen::Index l = 0; l < it.z_lp.size(); ++l) {
      if (it.z_lp(l) <= 0.0) it.z_lp(l) = 1.0;
    }
  }

  double rhs_norm = form.rhs.norm();
  double c_norm = form.cost_lp.squaredNorm();
  for (const auto& c : form.cost_blocks) c_norm += c.squaredNorm();
  c_norm = std::sqrt(c_norm);

  const double target_feas = 0.1 * config_.feas_tol;
  const double target_gap = 0.1 * config_.gap_tol;
  // ||X Z|| is O(mu) near the central path but O(sqrt(mu)) away from it, and
  // it is what the operator-slackness certificate measures. Once the targets
  // are met, phase 2 takes a few centering steps, then a few gentle ones, and
  // keeps the iterate with the smallest complementarity norm.
  constexpr int kPolishSteps = 8;
  constexpr int kCenteringSteps = 3;
  std::optional<PhaseOutcome> accepted;
  double accepted_xz = std::numeric_limits<double>::infinity();
  int polish_step = -1;

  PhaseOutcome out;
  out.kind = Kind::IterationLimit;
  double best_merit = std::numeric_limits<double>::infinity();
  int since_best = 0;

  std::vector<MatrixXd> rd(static_cast<std::size_t>(nb));
  VectorXd rd_lp;
  std::vector<Eigen::LLT<MatrixXd>> chol_x(static_cast<std::size_t>(nb));
  std::vector<MatrixXd> z_inv(static_cast<std::size_t>(nb));
  std::vector<Eigen::LLT<MatrixXd>> chol_z(static_cast<std::size_t>(nb));

  for (int iter = 0;; ++iter) {
    // Residuals.
    const VectorXd rp = form.rhs - ws.apply(it.x_blocks, it.x_lp);
    std::vector<MatrixXd> aty;
    VectorXd aty_lp;
    ws.apply_adjoint(it.y, aty, aty_lp);
    double rd_sq = 0.0;
    double pobj = form.cost_lp.dot(it.x_lp);
    double xz = it.x_lp.dot(it.z_lp);
    double cs = 0.0;
    for (int b = 0; b < nb; ++b) {
      const auto bi = static_cast<std::size_t>(b);
      rd[bi] = project_structure(form.cost_blocks[bi] - it.z_blocks[bi] - aty[bi]);
      rd_sq += rd[bi].squaredNorm();
      pobj += inner(form.cost_blocks[bi], it.x_blocks[bi]);
      xz += inner(it.x_blocks[bi], it.z_blocks[bi]);
      cs = std::max(cs, complex_structure_residual(it.x_blocks[bi]));
    }
    rd_lp = form.cost_lp - it.z_lp - aty_lp;
    rd_sq += rd_lp.squaredNorm();
    const double dobj = form.rhs.dot(it.y);
    const double mu = xz / ntot;
    const double rp_rel = rp.norm() / (1.0 + rhs_norm);
    const double rd_rel = std::sqrt(rd_sq) / (1.0 + c_norm);
    const double gap_rel = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    out.iterate = it;
    out.iterations = iter;
    out.sdp_primal = rp_rel;
    out.sdp_dual = rd_rel;
    out.complex_structure = cs;

    if (trace != nullptr) {
      IterateLog log;
      log.phase = phase;
      log.iteration = iter;
      log.mu = mu;
      log.sdp_primal_residual = rp_rel;
      log.sdp_dual_residual = rd_rel;
      log.complex_structure_residual = cs;
      const Evaluation ev = evaluate(form, it, config_.feas_tol);
      log.primal_objective = ev.primal_value;
      log.primal_violation = ev.max_row_violation;
      log.dual_bound = ev.dual_value;
      if (!trace->empty() && trace->back().phase == phase) {
        log.step_primal = trace->back().step_primal;
        log.step_dual = trace->back().step_dual;
      }
      trace->push_back(log);
    }

    if (rp_rel <= target_feas && rd_rel <= target_feas && gap_rel <= target_gap) {
      out.kind = Kind::Converged;
      if (phase != 2) break;
      if (polish_step < 0) {
        polish_step = 0;
        since_best = 0;
      }
      double xz_norm = it.x_lp.size() ? it.x_lp.cwiseProduct(it.z_lp).cwiseAbs().maxCoeff() : 0.0;
      for (int b = 0; b < nb; ++b) {
        const auto bi = static_cast<std::size_t>(b);
        xz_norm = std::max(xz_norm, (it.x_blocks[bi] * it.z_blocks[bi]).norm());
      }
      if (xz_norm < accepted_xz) {
        accepted = out;
        accepted->message.clear();
        accepted_xz = xz_norm;
      }
    }
    if (polish_step >= 0 && polish_step++ >= kPolishSteps) break;
    const double merit = std::max({rp_rel, rd_rel, gap_rel});
    if (merit < 0.5 * best_merit) {
      best_merit = merit;
      since_best = 0;
    } else if (++since_best >= 10) {
      out.kind = Kind::Stalled;
      out.message = "no progress in 10 iterations";
      break;
    }
    if (iter >= config_.max_iters) {
      out.kind = Kind::IterationLimit;
      out.message = "iteration limit reached";
      break;
    }
    if (it.y.lpNorm<Eigen::Infinity>() > config_.infeasibility_threshold) {
      out.kind = Kind::Diverged;
      out.message = "dual iterates diverged";
      break;
    }
    double xmax = it.x_lp.size() ? it.x_lp.lpNorm<Eigen::Infinity>() : 0.0;
    for (const auto& x : it.x_blocks) xmax = std::max(xmax, x.lpNorm<Eigen::Infinity>());
    if (xmax > config_.infeasibility_threshold) {
      out.kind = Kind::Diverged;
      out.message = "primal iterates diverged";
      break;
    }

    // Factorizations.
    bool ok = true;
    for (int b = 0; b < nb && ok; ++b) {
      const auto bi = static_cast<std::size_t>(b);
      chol_x[bi].compute(it.x_blocks[bi]);
      chol_z[bi].compute(it.z_blocks[bi]);
      ok = chol_x[bi].info() == Eigen::Success && chol_z[bi].info() == Eigen::Success;
      if (ok) {
        z_inv[bi] = chol_z[bi].solve(MatrixXd::Identity(size_of(b), size_of(b)));
        z_inv[bi] = 0.5 * (z_inv[bi] + z_inv[bi].transpose()).eval();
      }
    }
    if (!ok || (it.x_lp.array() <= 0.0).any() || (it.z_lp.array() <= 0.0).any()) {
      out.kind = Kind::Failure;
      out.message = "iterate left the cone interior";
      break;
    }

    // Schur complement M_ij = sum_b <A_ib, X_b A_jb Z_b^-1> + sum_l a_il a_jl x_l / z_l.
    const VectorXd ratio = it.x_lp.cwiseQuotient(it.z_lp);
    MatrixXd schur = ws.a_lp * ratio.asDiagonal() * ws.a_lp.transpose();
    for (int b = 0; b < nb; ++b) {
      const auto bi = static_cast<std::size_t>(b);
      std::vector<std::pair<int, MatrixXd>> g;
      for (int j = 0; j < ws.m; ++j) {
        if (const MatrixXd* aj = ws.a[static_cast<std::size_t>(j)][bi]) {
          g.emplace_back(j, it.x_blocks[bi] * *aj * z_inv[bi]);
        }
      }
      for (const auto& [j, gj] : g) {
        for (int i = 0; i <= j; ++i) {
          if (const MatrixXd* ai = ws.a[static_cast<std::size_t>(i)][bi]) {
            const double v = inner(*ai, gj);
            schur(i, j) += v;
            if (i != j) schur(j, i) += v;
          }
        }
      }
    }
    schur = 0.5 * (schur + schur.transpose()).eval();
    Eigen::LLT<MatrixXd> schur_llt;
    Eigen::LDLT<MatrixXd> schur_ldlt;
    bool use_llt = false;
    {
      const double diag_max = std::max(schur.diagonal().cwiseAbs().maxCoeff(), 1e-300);
      double reg = 0.0;
      for (int attempt = 0; attempt < 6; ++attempt) {
        MatrixXd trial = schur;
        if (reg > 0.0) trial.diagonal().array() += reg;
        schur_llt.compute(trial);
        if (schur_llt.info() == Eigen::Success) {
          use_llt = true;
          break;
        }
        reg = reg == 0.0 ? 1e-14 * diag_max : reg * 100.0;
      }
      if (!use_llt) {
        schur_ldlt.compute(schur);
        if (schur_ldlt.info() != Eigen::Success) {
          out.kind = Kind::Failure;
          out.message = "Schur complement factorization failed";
          break;
        }
      }
    }
    auto schur_solve = [&](const VectorXd& r) -> VectorXd {
      VectorXd x = use_llt ? VectorXd(schur_llt.solve(r)) : VectorXd(schur_ldlt.solve(r));
      const VectorXd res = r - schur * x;
      x += use_llt ? VectorXd(schur_llt.solve(res)) : VectorXd(schur_ldlt.solve(res));
      return x;
    };

    struct Direction {
      std::vector<MatrixXd> dx;
      VectorXd dx_lp;
      VectorXd dy;
      std::vector<MatrixXd> dz;
      VectorXd dz_lp;
    };
    auto direction = [&](const std::vector<MatrixXd>& rc, const VectorXd& rc_lp) {
      Direction dir;
      std::vector<MatrixXd> tmp(static_cast<std::size_t>(nb));
      for (int b = 0; b < nb; ++b) {
        const auto bi = static_cast<std::size_t>(b);
        tmp[bi] = rc[bi] - it.x_blocks[bi] * rd[bi] * z_inv[bi];
      }
      const VectorXd tmp_lp = rc_lp - ratio.cwiseProduct(rd_lp);
      dir.dy = schur_solve(rp - ws.apply(tmp, tmp_lp));
      std::vector<MatrixXd> atdy;
      VectorXd atdy_lp;
      ws.apply_adjoint(dir.dy, atdy, atdy_lp);
      dir.dz.resize(static_cast<std::size_t>(nb));
      dir.dx.resize(static_cast<std::size_t>(nb));
      for (int b = 0; b < nb; ++b) {
        const auto bi = static_cast<std::size_t>(b);
        dir.dz[bi] = project_structure(rd[bi] - atdy[bi]);
        dir.dx[bi] = project_structure(rc[bi] - it.x_blocks[bi] * dir.dz[bi] * z_inv[bi]);
      }
      dir.dz_lp = rd_lp - atdy_lp;
      dir.dx_lp = rc_lp - ratio.cwiseProduct(dir.dz_lp);
      return dir;
    };
    auto steps = [&](const Direction& dir) {
      double ap = max_step_lp(it.x_lp, dir.dx_lp);
      double ad = max_step_lp(it.z_lp, dir.dz_lp);
      for (int b = 0; b < nb; ++b) {
        const auto bi = static_cast<std::size_t>(b);
        ap = std::min(ap, max_step(chol_x[bi], dir.dx[bi]));
        ad = std::min(ad, max_step(chol_z[bi], dir.dz[bi]));
      }
      return std::pair{ap, ad};
    };

    // Predictor.
    std::vector<MatrixXd> rc(static_cast<std::size_t>(nb));
    for (int b = 0; b < nb; ++b) rc[static_cast<std::size_t>(b)] = -it.x_blocks[static_cast<std::size_t>(b)];
    VectorXd rc_lp = -it.x_lp;
    const Direction aff = direction(rc, rc_lp);
    auto [ap_aff, ad_aff] = steps(aff);
    ap_aff = std::min(1.0, ap_aff);
    ad_aff = std::min(1.0, ad_aff);
    double xz_aff = (it.x_lp + ap_aff * aff.dx_lp).dot(it.z_lp + ad_aff * aff.dz_lp);
    for (int b = 0; b < nb; ++b) {
      const auto bi = static_cast<std::size_t>(b);
      xz_aff += inner(it.x_blocks[bi] + ap_aff * aff.dx[bi], it.z_blocks[bi] + ad_aff * aff.dz[bi]);
    }
    double sigma = std::clamp(std::pow(std::max(xz_aff, 0.0) / xz, 3.0), 0.0, 1.0);
    const bool centering = polish_step >= 0 && polish_step <= kCenteringSteps;
    if (polish_step >= 0) sigma = centering ? 1.0 : std::max(sigma, 0.2);
    const double second_order = centering ? 0.0 : 1.0;

    // Corrector.
    for (int b = 0; b < nb; ++b) {
      const auto bi = static_cast<std::size_t>(b);
      rc[bi] = sigma * mu * z_inv[bi] - it.x_blocks[bi] -
               second_order * aff.dx[bi] * aff.dz[bi] * z_inv[bi];
    }
    rc_lp = (sigma * mu - second_order * aff.dx_lp.cwiseProduct(aff.dz_lp).array())
                .matrix()
                .cwiseQuotient(it.z_lp) -
            it.x_lp;
    const Direction dir = direction(rc, rc_lp);
    auto [ap, ad] = steps(dir);
    // Back off further from the boundary after short steps; full steps use
    // the configured fraction. Keeps the endgame centered.
    const double gamma =
        std::min(config_.step_fraction, 0.85 + 0.1 * std::min({ap, ad, 1.0}));
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);

    for (int b = 0; b < nb; ++b) {
      const auto bi = static_cast<std::size_t>(b);
      it.x_blocks[bi] = project_structure(it.x_blocks[bi] + ap * dir.dx[bi]);
      it.z_blocks[bi] = project_structure(it.z_blocks[bi] + ad * dir.dz[bi]);
    }
    it.x_lp += ap * dir.dx_lp;
    it.y += ad * dir.dy;
    it.z_lp += ad * dir.dz_lp;
    if (trace != nullptr && !trace->empty()) {
      trace->back().step_primal = ap;
      trace->back().step_dual = ad;
    }
    if (ap < 1e-12 && ad < 1e-12) {
      out.kind = Kind::Stalled;
      out.message = "step lengths collapsed";
      out.iterations = iter + 1;
      break;
    }
  }
  if (accepted) return *accepted;
  return out;
}

SolverResult InteriorPointSolver::solve(const SdpStandardForm& form) {
  const PovmProgram& prog = form.program;
  const auto& base = prog.base;
  std::vector<IterateLog> trace;
  std::vector<IterateLog>* trace_ptr = config_.record_trace ? &trace : nullptr;
  double bound_scale = 1.0;
  for (double b : base.bounds()) bound_scale = std::max(bound_scale, 1.0 + std::abs(b));

  // Phase 1 when the uniform POVM violates a row or equalities are present.
  bool need_phase1 = false;
  if (base.constraints() > 0) {
    const auto values = constraint_values(base, Povm::uniform(base.dim(), base.outcomes()));
    for (int j = 0; j < base.constraints(); ++j) {
      if (values[static_cast<std::size_t>(j)] > base.bound(j)) need_phase1 = true;
      if (form.row_map[static_cast<std::size_t>(j)].slack < 0) need_phase1 = true;
    }
    if (need_phase1) {
      double lower = std::numeric_limits<double>::infinity();
      for (int j = 0; j < base.constraints(); ++j) {
        lower = std::min(lower, base.bound(j) - values[static_cast<std::size_t>(j)]);
      }
      lower -= 1.0;
      std::vector<double> shifted(base.bounds());
      for (auto& b : shifted) b -= lower;
      const auto zero = std::vector<HermitianOperator>(static_cast<std::size_t>(base.outcomes()),
                                                       HermitianOperator::zero(base.dim()));
      PovmProgram p1(DiscriminationProblem::make(zero, base.constraint_ops(), shifted));
      p1.extra_objective.assign(static_cast<std::size_t>(prog.extra()), 0.0);
      p1.extra_objective.push_back(1.0);
      p1.extra_coefficients = Eigen::MatrixXd::Zero(base.constraints(), prog.extra() + 1);
      if (prog.extra() > 0) p1.extra_coefficients.leftCols(prog.extra()) = prog.extra_coefficients;
      p1.extra_coefficients.col(prog.extra()).setOnes();
      p1.objective_offset = lower;
      const SdpStandardForm f1 = compile(p1, CompileOptions{.facial_reduction = false});
      const PhaseOutcome o1 = run(f1, 1, trace_ptr);
      const Evaluation e1 = evaluate(f1, o1.iterate, config_.feas_tol);
      const double threshold = -config_.feas_tol * bound_scale;
      const double estimate = std::isfinite(e1.dual_value) ? e1.dual_value : e1.primal_value;
      if (estimate < threshold && e1.povm) {
        SolverResult r(*e1.povm, *e1.dual);
        r.status = SolverStatus::Infeasible;
        r.iterations = o1.iterations;
        InfeasibilityCertificate cert{e1.dual->X, e1.dual->lambda, e1.dual->X.trace(), e1.primal_value};
        for (int j = 0; j < base.constraints(); ++j) {
          cert.value += cert.lambda[static_cast<std::size_t>(j)] * base.bound(j);
        }
        r.infeasibility = std::move(cert);
        r.primal_value = e1.primal_value;
        r.dual_value = e1.dual_value;
        r.residuals.sdp_primal = o1.sdp_primal;
        r.residuals.sdp_dual = o1.sdp_dual;
        r.residuals.dual_shift = e1.dual_shift;
        r.residuals.complex_structure = o1.complex_structure;
        r.trace = std::move(trace);
        std::ostringstream msg;
        msg << "feasible set is empty: best uniform slack " << e1.primal_value;
        r.message = msg.str();
        return r;
      }
    }
  }

  const PhaseOutcome o = run(form, 2, trace_ptr);
  const Evaluation ev = evaluate(form, o.iterate, config_.feas_tol);
  if (!ev.povm) {
    SolverResult r(Povm::uniform(base.dim(), base.outcomes()), *ev.dual);
    r.status = SolverStatus::NumericalFailure;
    r.iterations = o.iterations;
    r.message = "primal iterate has a singular outcome sum";
    r.trace = std::move(trace);
    return r;
  }
  SolverResult r(*ev.povm, *ev.dual);
  r.extra_values = ev.extras;
  r.primal_value = ev.primal_value;
  r.dual_value = ev.dual_value;
  r.iterations = o.iterations;
  r.residuals.sdp_primal = o.sdp_primal;
  r.residuals.sdp_dual = o.sdp_dual;
  r.residuals.gap = std::abs(ev.dual_value - ev.primal_value);
  r.residuals.completeness = ev.completeness;
  r.residuals.max_row_violation = std::max(ev.max_row_violation, 0.0);
  r.residuals.dual_shift = ev.dual_shift;
  r.residuals.complex_structure = o.complex_structure;
  r.trace = std::move(trace);
  r.face_reduced_rows = form.face_reduced_rows;
  if (form.reduced()) r.faces = form.faces;

  const bool primal_ok = ev.completeness <= tol::kCompleteness &&
                         ev.max_row_violation <= config_.feas_tol * bound_scale;
  const bool gap_ok = std::isfinite(ev.dual_value) &&
                      r.residuals.gap <= config_.gap_tol * (1.0 + std::abs(ev.primal_value));
  using Kind = PhaseOutcome::Kind;
  if (o.kind == Kind::Diverged) {
    r.status = SolverStatus::NumericalFailure;
    r.message = o.message;
  } else if (primal_ok && gap_ok) {
    r.status = SolverStatus::Optimal;
  } else if (o.kind == Kind::Failure) {
    r.status = SolverStatus::NumericalFailure;
    r.message = o.message;
  } else {
    r.status = SolverStatus::IterationLimit;
    std::ostringstream msg;
    msg << (o.message.empty() ? "tolerances not met" : o.message) << " (gap " << r.residuals.gap
        << ", row violation " << r.residuals.max_row_violation << ")";
    r.message = msg.str();
  }
  return r;
}

SolverResult solve(const SdpStandardForm& form, const SolverConfig& config) {
  return InteriorPointSolver(config).solve(form);
}

SolverResult solve(const PovmProgram& program, const SolverConfig& config) {
  return solve(compile(program), config);
}

SolverResult solve(const DiscriminationProblem& problem, const SolverConfig& config) {
  return solve(compile(problem), config);
}

}  // namespace povmopt

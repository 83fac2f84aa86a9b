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
#include <sstream>

#include "povmopt/errors.hpp"
#include "povmopt/sdp.hpp"

namespace povmopt {

namespace {

std::vector<HermitianOperator> hermitian_basis(int d) {
  std::vector<HermitianOperator> basis;
  basis.reserve(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
  const double r = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < d; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(k, k) = 1.0;
    basis.push_back(HermitianOperator::symmetrized(e));
  }
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d);
      s(k, l) = r;
      s(l, k) = r;
      basis.push_back(HermitianOperator::symmetrized(s));
      ComplexMatrix a = ComplexMatrix::Zero(d, d);
      a(k, l) = Complex(0.0, r);
      a(l, k) = Complex(0.0, -r);
      basis.push_back(HermitianOperator::symmetrized(a));
    }
  }
  return basis;
}

bool has_extras(const PovmProgram& p, int j) {
  for (int e = 0; e < p.extra(); ++e) {
    if (p.extra_coefficients(j, e) != 0.0) return true;
  }
  return false;
}

bool mirrored(const PovmProgram& p, int j, int k) {
  if (p.base.bound(j) != -p.base.bound(k)) return false;
  for (int m = 0; m < p.base.outcomes(); ++m) {
    if (!(p.base.constraint_op(j, m).matrix() == -p.base.constraint_op(k, m).matrix())) return false;
  }
  for (int e = 0; e < p.extra(); ++e) {
    if (p.extra_coefficients(j, e) != -p.extra_coefficients(k, e)) return false;
  }
  return true;
}

bool is_zero_row(const PovmProgram& p, int j) {
  for (int m = 0; m < p.base.outcomes(); ++m) {
    if (p.base.constraint_op(j, m).frobenius_norm() != 0.0) return false;
  }
  return !has_extras(p, j);
}

// Finds rows that every POVM satisfies with equality and accumulates, per
// outcome, PSD operators whose kernels contain the feasible outcomes.
void reduce_faces(const PovmProgram& program, const std::vector<int>& partner,
                  const CompileOptions& options, std::vector<ComplexMatrix>& faces,
                  std::vector<bool>& reduced) {
  const auto& base = program.base;
  const int d = base.dim();
  const int outcomes = base.outcomes();
  const auto values = constraint_values(base, Povm::uniform(d, outcomes));
  std::vector<ComplexMatrix> k_sum(static_cast<std::size_t>(outcomes), ComplexMatrix::Zero(d, d));
  bool any = false;
  for (int j = 0; j < base.constraints(); ++j) {
    if (reduced[static_cast<std::size_t>(j)] || has_extras(program, j) || is_zero_row(program, j)) continue;
    const double slack_tol = options.tight_tol * (1.0 + std::abs(base.bound(j)));
    if (values[static_cast<std::size_t>(j)] < base.bound(j) - slack_tol) continue;
    // min_Pi row_j(Pi) = -max_Pi sum_m Tr(-a_{j,m} Pi_m).
    std::vector<HermitianOperator> neg;
    for (int m = 0; m < outcomes; ++m) neg.push_back(-base.constraint_op(j, m));
    SolverConfig cfg;
    cfg.record_trace = false;
    const SolverResult aux = solve(DiscriminationProblem::make(std::move(neg), {}, {}), cfg);
    if (aux.status != SolverStatus::Optimal) continue;
    const double min_row = -aux.primal_value;
    if (std::abs(base.bound(j) - min_row) > slack_tol) continue;
    for (int m = 0; m < outcomes; ++m) {
      // K_m = X + a_{j,m} >= 0 and sum_m Tr(K_m Pi_m) = row_j(Pi) - min_row.
      const HermitianOperator k = aux.dual.X + base.constraint_op(j, m);
      k_sum[static_cast<std::size_t>(m)] += k.matrix() / (1.0 + k.frobenius_norm());
    }
    reduced[static_cast<std::size_t>(j)] = true;
    if (partner[static_cast<std::size_t>(j)] >= 0) reduced[static_cast<std::size_t>(partner[static_cast<std::size_t>(j)])] = true;
    any = true;
  }
  if (!any) return;
  for (int m = 0; m < outcomes; ++m) {
    const auto k = HermitianOperator::symmetrized(k_sum[static_cast<std::size_t>(m)]);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(k.matrix());
    if (es.info() != Eigen::Success) throw EigDecompositionFailed("face computation failed");
    const double cut = options.kernel_tol * (1.0 + k.frobenius_norm());
    int kdim = 0;
    while (kdim < d && es.eigenvalues()(kdim) <= cut) ++kdim;
    faces[static_cast<std::size_t>(m)] = es.eigenvectors().leftCols(kdim);
  }
}

// Incremental Gram-Schmidt over the non-slack columns.
class RankTracker {
 public:
  RankTracker(std::vector<int> offsets, int width) : offsets_(std::move(offsets)), width_(width) {}

  Eigen::VectorXd vectorize(const SdpStandardForm::Row& row, int slack_count) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(width_);
    const double w = std::sqrt(2.0);
    for (const auto& [b, a] : row.blocks) {
      int idx = offsets_[static_cast<std::size_t>(b)];
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index k = i; k < a.cols(); ++k) v(idx++) = (i == k) ? a(i, k) : w * a(i, k);
      }
    }
    const int extra_start = offsets_.back();
    for (const auto& [l, c] : row.lp) {
      if (l >= slack_count) v(extra_start + (l - slack_count)) = c;
    }
    return v;
  }

  bool accept(Eigen::VectorXd v) {
    const double norm = v.norm();
    if (norm == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis_) v -= q.dot(v) * q;
    }
    const double r = v.norm();
    if (r <= 1e-10 * norm) return false;
    basis_.push_back(v / r);
    return true;
  }

 private:
  std::vector<int> offsets_;
  int width_;
  std::vector<Eigen::VectorXd> basis_;
};

}  // namespace

std::vector<HermitianOperator> lift_outcomes(const SdpStandardForm& form,
                                             const std::vector<Eigen::MatrixXd>& x_blocks) {
  std::vector<HermitianOperator> out(static_cast<std::size_t>(form.outcomes()),
                                     HermitianOperator::zero(form.dim));
  for (int b = 0; b < form.blocks(); ++b) {
    const int m = form.block_outcome[static_cast<std::size_t>(b)];
    const HermitianOperator p = de_embed(x_blocks[static_cast<std::size_t>(b)]);
    const ComplexMatrix& v = form.faces[static_cast<std::size_t>(m)];
    out[static_cast<std::size_t>(m)] = v.cols() == form.dim && v.isIdentity(0.0)
                                           ? p
                                           : congruence(v, p);
  }
  return out;
}

SdpStandardForm compile(const PovmProgram& program, const CompileOptions& options) {
  const DiscriminationProblem& base = program.base;
  const int d = base.dim();
  const int outcomes = base.outcomes();
  const int rows_j = base.constraints();
  const int extras = program.extra();
  if (program.extra_coefficients.rows() != rows_j || program.extra_coefficients.cols() != extras) {
    std::ostringstream msg;
    msg << "extra coefficients are " << program.extra_coefficients.rows() << "x"
        << program.extra_coefficients.cols() << ", expected " << rows_j << "x" << extras;
    throw DimMismatch(msg.str());
  }

  SdpStandardForm form(program);
  form.dim = d;

  // Pair up mirrored rows (a, h, b) / (-a, -h, -b) into single equalities.
  std::vector<int> partner(static_cast<std::size_t>(rows_j), -1);
  for (int j = 0; j < rows_j; ++j) {
    if (partner[static_cast<std::size_t>(j)] >= 0 || is_zero_row(program, j)) continue;
    for (int k = j + 1; k < rows_j; ++k) {
      if (partner[static_cast<std::size_t>(k)] < 0 && mirrored(program, j, k)) {
        partner[static_cast<std::size_t>(j)] = k;
        partner[static_cast<std::size_t>(k)] = j;
        break;
      }
    }
  }

  form.faces.assign(static_cast<std::size_t>(outcomes), ComplexMatrix::Identity(d, d));
  std::vector<bool> reduced(static_cast<std::size_t>(rows_j), false);
  if (options.facial_reduction && rows_j > 0) reduce_faces(program, partner, options, form.faces, reduced);

  std::vector<int> block_of(static_cast<std::size_t>(outcomes), -1);
  std::vector<int> offsets;
  int width = 0;
  for (int m = 0; m < outcomes; ++m) {
    const ComplexMatrix& v = form.faces[static_cast<std::size_t>(m)];
    const int k = static_cast<int>(v.cols());
    if (k == 0) continue;
    block_of[static_cast<std::size_t>(m)] = form.blocks();
    form.block_dims.push_back(2 * k);
    form.block_outcome.push_back(m);
    form.cost_blocks.push_back(-0.5 * embed(ComplexMatrix(v.adjoint() * base.objective_op(m).matrix() * v)));
    offsets.push_back(width);
    width += k * (2 * k + 1);
  }
  offsets.push_back(width);
  width += extras;
  if (form.blocks() == 0) throw InvalidState("facial reduction left no measurement outcomes");

  auto restricted_row = [&](auto op_of) {
    SdpStandardForm::Row row;
    for (int m = 0; m < outcomes; ++m) {
      const int b = block_of[static_cast<std::size_t>(m)];
      if (b < 0) continue;
      const ComplexMatrix& v = form.faces[static_cast<std::size_t>(m)];
      const HermitianOperator& a = op_of(m);
      if (a.frobenius_norm() == 0.0) continue;
      Eigen::MatrixXd e = 0.5 * embed(ComplexMatrix(v.adjoint() * a.matrix() * v));
      if (e.norm() == 0.0) continue;
      row.blocks.emplace_back(b, std::move(e));
    }
    return row;
  };

  int slack_count = 0;
  for (int j = 0; j < rows_j; ++j) {
    if (!reduced[static_cast<std::size_t>(j)] && partner[static_cast<std::size_t>(j)] < 0) ++slack_count;
  }
  form.slack_count = slack_count;
  form.lp_dim = slack_count + extras;
  form.cost_lp = Eigen::VectorXd::Zero(form.lp_dim);
  for (int e = 0; e < extras; ++e) {
    form.cost_lp(slack_count + e) = -program.extra_objective[static_cast<std::size_t>(e)];
  }
  RankTracker rank(offsets, width);

  std::vector<double> rhs;
  form.basis = hermitian_basis(d);
  for (const auto& h : form.basis) {
    SdpStandardForm::Row row = restricted_row([&](int) -> const HermitianOperator& { return h; });
    if (!rank.accept(rank.vectorize(row, slack_count))) {
      form.basis_row.push_back(-1);
      ++form.dropped_rows;
      continue;
    }
    form.basis_row.push_back(form.row_count());
    form.rows.push_back(std::move(row));
    rhs.push_back(h.trace());
  }

  form.row_map.assign(static_cast<std::size_t>(rows_j), {});
  int next_slack = 0;
  for (int j = 0; j < rows_j; ++j) {
    auto& map = form.row_map[static_cast<std::size_t>(j)];
    if (reduced[static_cast<std::size_t>(j)]) {
      map.face_reduced = true;
      form.face_reduced_rows.push_back(j);
      continue;
    }
    const int k = partner[static_cast<std::size_t>(j)];
    if (k >= 0 && k < j) continue;
    SdpStandardForm::Row row =
        restricted_row([&](int m) -> const HermitianOperator& { return base.constraint_op(j, m); });
    for (int e = 0; e < extras; ++e) {
      const double h = program.extra_coefficients(j, e);
      if (h != 0.0) row.lp.emplace_back(slack_count + e, h);
    }
    if (k < 0) {
      map.slack = next_slack;
      row.lp.emplace_back(next_slack++, 1.0);
    } else {
      form.row_map[static_cast<std::size_t>(k)].sign = -1;
      if (!rank.accept(rank.vectorize(row, slack_count))) {
        ++form.dropped_rows;
        continue;
      }
      form.row_map[static_cast<std::size_t>(k)].sdp_row = form.row_count();
    }
    map.sdp_row = form.row_count();
    form.rows.push_back(std::move(row));
    rhs.push_back(base.bound(j));
  }
  form.rhs = Eigen::Map<Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  return form;
}

SdpStandardForm compile(const DiscriminationProblem& problem, const CompileOptions& options) {
  return compile(PovmProgram(problem), options);
}

}  // namespace povmopt

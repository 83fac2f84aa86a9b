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

#include "povmopt/certificate.hpp"

#include <algorithm>
#include <sstream>

#include "povmopt/errors.hpp"

namespace povmopt {

namespace {

void require_length(const DiscriminationProblem& problem, std::size_t n) {
  if (n != static_cast<std::size_t>(problem.constraints())) {
    std::ostringstream msg;
    msg << "lambda has " << n << " entries, problem has " << problem.constraints()
        << " constraints";
    throw LengthMismatch(msg.str());
  }
}

}  // namespace

std::vector<HermitianOperator> z_operators(const DiscriminationProblem& problem,
                                           std::span<const double> lambda) {
  require_length(problem, lambda.size());
  std::vector<HermitianOperator> z;
  z.reserve(static_cast<std::size_t>(problem.outcomes()));
  for (int m = 0; m < problem.outcomes(); ++m) {
    ComplexMatrix zm = problem.objective_op(m).matrix();
    for (int j = 0; j < problem.constraints(); ++j) {
      zm -= lambda[static_cast<std::size_t>(j)] * problem.constraint_op(j, m).matrix();
    }
    z.push_back(HermitianOperator::symmetrized(zm));
  }
  return z;
}

double dual_objective(const DiscriminationProblem& problem, const DualCertificate& cert) {
  require_length(problem, cert.lambda.size());
  if (cert.X.dim() != problem.dim()) throw DimMismatch("certificate X has the wrong dimension");
  double s = cert.X.trace();
  for (int j = 0; j < problem.constraints(); ++j) {
    s += cert.lambda[static_cast<std::size_t>(j)] * problem.bound(j);
  }
  return s;
}

DualCertificate build_statement3_certificate(const DiscriminationProblem& problem,
                                             const Povm& povm, std::span<const double> lambda) {
  const auto z = z_operators(problem, lambda);
  if (povm.size() != problem.outcomes()) throw OutcomeCountMismatch("POVM outcome count differs");
  if (povm.dim() != problem.dim()) throw DimMismatch("POVM dimension differs");
  ComplexMatrix x = ComplexMatrix::Zero(problem.dim(), problem.dim());
  for (int m = 0; m < problem.outcomes(); ++m) x += z[static_cast<std::size_t>(m)].matrix() * povm[m].matrix();
  return {HermitianOperator::symmetrized(x), std::vector<double>(lambda.begin(), lambda.end())};
}

std::vector<std::string> CertificateReport::failures() const {
  std::vector<std::string> f;
  if (!lambda_nonnegative) f.emplace_back("lambda_nonnegative");
  if (!primal_feasible_ok) f.emplace_back("primal_feasibility");
  if (!dual_feasible_ok) f.emplace_back("dual_feasibility");
  if (!operator_slackness_ok) f.emplace_back("operator_slackness");
  if (!scalar_slackness_ok) f.emplace_back("scalar_slackness");
  return f;
}

namespace {

CertificateReport check_dual_pair(const DiscriminationProblem& problem, const Povm& povm,
                                  const DualCertificate& cert, std::span<const ComplexMatrix> faces,
                                  const CertificateTolerances& tolerances) {
  require_length(problem, cert.lambda.size());
  CertificateReport r;
  r.face_restricted = !faces.empty();
  r.feasibility = is_feasible(problem, povm, tolerances.primal_feasibility);
  r.primal_feasible_ok = r.feasibility.feasible;

  std::vector<double> lambda(cert.lambda);
  for (auto& l : lambda) {
    if (l < 0.0) {
      if (l >= -tol::kLambdaClamp) {
        l = 0.0;
      } else {
        r.lambda_nonnegative = false;
      }
    }
  }

  const auto z = z_operators(problem, lambda);
  for (int m = 0; m < problem.outcomes(); ++m) {
    const ComplexMatrix slack = (cert.X - z[static_cast<std::size_t>(m)]).matrix();
    double neg = 0.0;
    double prod = 0.0;
    if (r.face_restricted) {
      // Off-face weight of Pi_m counts against slackness: the relaxed dual
      // condition says nothing about directions outside the face.
      const ComplexMatrix& v = faces[static_cast<std::size_t>(m)];
      const ComplexMatrix& pi = povm[m].matrix();
      prod = (pi - v * (v.adjoint() * pi)).norm();
      if (v.cols() > 0) {
        const ComplexMatrix restricted = v.adjoint() * slack * v;
        neg = std::max(0.0, -min_eigenvalue(HermitianOperator::symmetrized(restricted)));
        prod = std::max(prod, (v.adjoint() * slack * pi).norm());
      }
    } else {
      neg = std::max(0.0, -min_eigenvalue(HermitianOperator::symmetrized(slack)));
      prod = (slack * povm[m].matrix()).norm();
    }
    if (r.worst_dual_outcome < 0 || neg > r.dual_feas_residual) {
      r.dual_feas_residual = neg;
      r.worst_dual_outcome = m;
    }
    if (r.worst_operator_outcome < 0 || prod > r.comp_slack_operator) {
      r.comp_slack_operator = prod;
      r.worst_operator_outcome = m;
    }
  }
  for (int j = 0; j < problem.constraints(); ++j) {
    const double v = std::abs(lambda[static_cast<std::size_t>(j)] * r.feasibility.slacks[static_cast<std::size_t>(j)]);
    if (r.worst_scalar_row < 0 || v > r.comp_slack_scalar) {
      r.comp_slack_scalar = v;
      r.worst_scalar_row = j;
    }
  }
  r.primal_value = objective_value(problem, povm);
  r.dual_value = dual_objective(problem, DualCertificate{cert.X, lambda});
  r.gap = std::abs(r.primal_value - r.dual_value);

  r.dual_feasible_ok = r.dual_feas_residual <= tolerances.dual_feasibility;
  r.operator_slackness_ok = r.comp_slack_operator <= tolerances.operator_slackness;
  r.scalar_slackness_ok = r.comp_slack_scalar <= tolerances.scalar_slackness;
  return r;
}

}  // namespace

CertificateReport check_statement2(const DiscriminationProblem& problem, const Povm& povm,
                                   const DualCertificate& cert,
                                   const CertificateTolerances& tolerances) {
  return check_dual_pair(problem, povm, cert, {}, tolerances);
}

CertificateReport check_statement2_on_face(const DiscriminationProblem& problem, const Povm& povm,
                                           const DualCertificate& cert,
                                           std::span<const ComplexMatrix> faces,
                                           const CertificateTolerances& tolerances) {
  if (faces.size() != static_cast<std::size_t>(problem.outcomes())) {
    throw OutcomeCountMismatch("one face isometry per outcome is required");
  }
  for (const auto& v : faces) {
    if (v.rows() != problem.dim()) throw DimMismatch("face isometry has the wrong row count");
  }
  return check_dual_pair(problem, povm, cert, faces, tolerances);
}

CertificateReport check_statement3(const DiscriminationProblem& problem, const Povm& povm,
                                   std::span<const double> lambda,
                                   const CertificateTolerances& tolerances) {
  return check_statement2(problem, povm, build_statement3_certificate(problem, povm, lambda),
                          tolerances);
}

}  // namespace povmopt

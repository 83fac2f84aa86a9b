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

#include <string>
#include <vector>

#include "povmopt/operator.hpp"
#include "povmopt/problem.hpp"

namespace povmopt {

/// Dual pair (X, lambda): X Hermitian, lambda_j >= 0 one per constraint row.
struct DualCertificate {
  HermitianOperator X;
  std::vector<double> lambda;
};

/// z_m(lambda) = c_m - sum_j lambda_j a_{j,m}. Throws LengthMismatch.
std::vector<HermitianOperator> z_operators(const DiscriminationProblem& problem,
                                           std::span<const double> lambda);

/// Tr X + sum_j lambda_j b_j. Throws LengthMismatch / DimMismatch.
double dual_objective(const DiscriminationProblem& problem, const DualCertificate& cert);

/// X = sum_n z_n(lambda) Pi_n, symmetrized, paired with lambda.
DualCertificate build_statement3_certificate(const DiscriminationProblem& problem,
                                             const Povm& povm, std::span<const double> lambda);

struct CertificateTolerances {
  double dual_feasibility = tol::kCertificate;
  double operator_slackness = tol::kCertificate;
  double scalar_slackness = tol::kCertificate;
  double primal_feasibility = tol::kCertificate;
};

struct CertificateReport {
  /// max_m of the negative part of lambda_min(X - z_m).
  double dual_feas_residual = 0.0;
  /// max_m ||(X - z_m) Pi_m||_F.
  double comp_slack_operator = 0.0;
  /// max_j |lambda_j (b_j - sum_m Tr(a_{j,m} Pi_m))|.
  double comp_slack_scalar = 0.0;
  /// |f(Pi) - s(X, lambda)|.
  double gap = 0.0;
  double primal_value = 0.0;
  double dual_value = 0.0;
  /// Outcomes / rows attaining the maxima above, -1 when not applicable.
  int worst_dual_outcome = -1;
  int worst_operator_outcome = -1;
  int worst_scalar_row = -1;

  FeasibilityReport feasibility;
  bool lambda_nonnegative = true;
  /// Dual feasibility and operator slackness were measured on faces V_m.
  bool face_restricted = false;

  bool dual_feasible_ok = false;
  bool operator_slackness_ok = false;
  bool scalar_slackness_ok = false;
  bool primal_feasible_ok = false;

  bool passed() const {
    return lambda_nonnegative && primal_feasible_ok && dual_feasible_ok && operator_slackness_ok &&
           scalar_slackness_ok;
  }
  /// Names of the failed conditions, empty on pass.
  std::vector<std::string> failures() const;
};

/// Checks X - z_m >= 0, (X - z_m) Pi_m = 0, and lambda_j * slack_j = 0.
/// Multipliers in [-tol::kLambdaClamp, 0) are clamped to zero; more negative
/// entries fail the report.
CertificateReport check_statement2(const DiscriminationProblem& problem, const Povm& povm,
                                   const DualCertificate& cert,
                                   const CertificateTolerances& tolerances = {});

/// Builds the certificate from lambda alone and checks it.
/// Statement (2) with dual feasibility relaxed to V_m^dagger (X - z_m) V_m >= 0
/// and operator slackness measured as ||V_m^dagger (X - z_m) Pi_m||_F. Valid
/// when every feasible Pi_m has range inside range(V_m).
CertificateReport check_statement2_on_face(const DiscriminationProblem& problem, const Povm& povm,
                                           const DualCertificate& cert,
                                           std::span<const ComplexMatrix> faces,
                                           const CertificateTolerances& tolerances = {});

CertificateReport check_statement3(const DiscriminationProblem& problem, const Povm& povm,
                                   std::span<const double> lambda,
                                   const CertificateTolerances& tolerances = {});

}  // namespace povmopt

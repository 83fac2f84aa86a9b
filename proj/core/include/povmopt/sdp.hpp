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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "povmopt/certificate.hpp"
#include "povmopt/operator.hpp"
#include "povmopt/problem.hpp"

namespace povmopt {

// Complex-to-real embedding H = A + iB -> [[A, -B], [B, A]]. Traces double,
// so Tr(H K) = <embed(H), embed(K)> / 2.
Eigen::MatrixXd embed(const HermitianOperator& h);
Eigen::MatrixXd embed(const ComplexMatrix& h);
/// Inverse of embed on the complex-structure subspace. Off-subspace input is
/// first projected onto it (the redundant copies are averaged).
HermitianOperator de_embed(const Eigen::MatrixXd& y);
/// The embedded imaginary unit [[0, -1], [1, 0]] of size 2d.
Eigen::MatrixXd complex_structure(int dim);
/// ||Y J - J Y||_F.
double complex_structure_residual(const Eigen::MatrixXd& y);

/// A discrimination problem extended by E nonnegative scalar variables u_e:
///
///   maximize   sum_m Tr(c_m Pi_m) + sum_e g_e u_e + offset
///   subject to sum_m Tr(a_{j,m} Pi_m) + sum_e h_{j,e} u_e <= b_j.
///
/// With E = 0 this is exactly the base problem. The minimax epigraph and the
/// feasibility phase are both instances.
struct PovmProgram {
  DiscriminationProblem base;
  std::vector<double> extra_objective;  ///< g, length E
  Eigen::MatrixXd extra_coefficients;   ///< h, J x E
  double objective_offset = 0.0;

  explicit PovmProgram(DiscriminationProblem p)
      : base(std::move(p)), extra_coefficients(base.constraints(), 0) {}
  int extra() const noexcept { return static_cast<int>(extra_objective.size()); }
};

/// Real block-diagonal standard form
///
///   minimize <C, X>  s.t.  <A_i, X> = rhs_i,  X >= 0
///
/// over one symmetric block per outcome and one nonnegative LP block holding
/// the inequality slacks followed by the extra variables.
///
/// Rows that hold with equality on every POVM (b_j equals the minimum of the
/// row over all measurements) leave the feasible set without interior. They
/// are removed and each outcome is restricted to the face they cut out:
/// Pi_m = V_m P_m V_m^dagger with V_m an isometry and P_m the block variable.
struct SdpStandardForm {
  struct Row {
    std::vector<std::pair<int, Eigen::MatrixXd>> blocks;  ///< (block index, A_i block)
    std::vector<std::pair<int, double>> lp;               ///< (LP index, coefficient)
  };
  /// Where constraint row j of the program landed.
  struct RowMap {
    int sdp_row = -1;  ///< -1 when the row was dropped (dependent or face-reduced)
    int slack = -1;    ///< LP index of its slack, -1 for a merged equality
    int sign = 1;      ///< -1 for the mirrored partner of a merged equality
    bool face_reduced = false;
  };

  explicit SdpStandardForm(PovmProgram p) : program(std::move(p)) {}

  PovmProgram program;
  int dim = 0;
  /// Embedded block sizes 2 k_b.
  std::vector<int> block_dims;
  /// Outcome index of each block; outcomes with an empty face have no block.
  std::vector<int> block_outcome;
  /// Per outcome: isometry V_m (d x k_m), identity without reduction.
  std::vector<ComplexMatrix> faces;
  int lp_dim = 0;
  int slack_count = 0;
  std::vector<Eigen::MatrixXd> cost_blocks;
  Eigen::VectorXd cost_lp;
  std::vector<Row> rows;
  Eigen::VectorXd rhs;
  /// Orthonormal Hermitian basis of the completeness equations
  /// Tr(basis[i] sum_m Pi_m) = Tr(basis[i]); basis_row[i] is the SDP row or -1.
  std::vector<HermitianOperator> basis;
  std::vector<int> basis_row;
  std::vector<RowMap> row_map;
  int dropped_rows = 0;
  std::vector<int> face_reduced_rows;

  int outcomes() const noexcept { return static_cast<int>(faces.size()); }
  int blocks() const noexcept { return static_cast<int>(block_dims.size()); }
  int completeness_rows() const noexcept { return static_cast<int>(basis.size()); }
  int row_count() const noexcept { return static_cast<int>(rows.size()); }
  int extra_offset() const noexcept { return slack_count; }
  bool reduced() const noexcept { return !face_reduced_rows.empty(); }
};

struct CompileOptions {
  bool facial_reduction = true;
  /// A row is tight when b_j - min_Pi row_j(Pi) <= tight_tol (1 + |b_j|).
  double tight_tol = 1e-8;
  /// Eigenvalues below kernel_tol (1 + ||K||) span the face.
  double kernel_tol = 1e-6;
};

SdpStandardForm compile(const PovmProgram& program, const CompileOptions& options = {});
SdpStandardForm compile(const DiscriminationProblem& problem, const CompileOptions& options = {});

/// Pi_m = V_m de_embed(X_b) V_m^dagger for every outcome (zero without a block).
std::vector<HermitianOperator> lift_outcomes(const SdpStandardForm& form,
                                             const std::vector<Eigen::MatrixXd>& x_blocks);

struct SolverConfig {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iters = 200;
  double step_fraction = 0.98;
  double infeasibility_threshold = 1e8;
  bool record_trace = true;

  /// Throws InvalidParameter.
  void validate() const;
};

enum class SolverStatus { Optimal, Infeasible, IterationLimit, NumericalFailure };
std::string to_string(SolverStatus status);

/// Raw primal-dual point of the standard form.
struct SdpIterate {
  std::vector<Eigen::MatrixXd> x_blocks;
  Eigen::VectorXd x_lp;
  Eigen::VectorXd y;
  std::vector<Eigen::MatrixXd> z_blocks;
  Eigen::VectorXd z_lp;
};

struct IterateLog {
  int phase = 2;
  int iteration = 0;
  double mu = 0.0;
  double sdp_primal_residual = 0.0;  ///< ||rhs - A(X)|| / (1 + ||rhs||)
  double sdp_dual_residual = 0.0;    ///< ||C - Z - A^T y|| / (1 + ||C||)
  /// Objective of the program at the completed POVM of the iterate.
  double primal_objective = 0.0;
  /// Largest row violation of that POVM (<= 0 means feasible).
  double primal_violation = 0.0;
  /// Tr X + sum lambda b after shifting X to be exactly dual feasible; a valid
  /// upper bound on the optimum for every iterate.
  double dual_bound = 0.0;
  double step_primal = 0.0;
  double step_dual = 0.0;
  double complex_structure_residual = 0.0;
};

/// Farkas-type proof of infeasibility: X >= -sum_j lambda_j a_{j,m} for all m,
/// lambda >= 0, and Tr X + sum_j lambda_j b_j = value < 0.
struct InfeasibilityCertificate {
  HermitianOperator X;
  std::vector<double> lambda;
  double value = 0.0;
  /// Best achievable uniform slack max_Pi min_j (b_j - row_j(Pi)).
  double max_min_slack = 0.0;
};

struct SolverResiduals {
  double sdp_primal = 0.0;
  double sdp_dual = 0.0;
  double gap = 0.0;             ///< |primal_value - dual_value|
  double completeness = 0.0;
  double max_row_violation = 0.0;
  double dual_shift = 0.0;      ///< identity shift added to X for exact dual feasibility
  double complex_structure = 0.0;
};

struct SolverResult {
  SolverResult(Povm p, DualCertificate d) : povm(std::move(p)), dual(std::move(d)) {}

  SolverStatus status = SolverStatus::NumericalFailure;
  Povm povm;
  DualCertificate dual;
  std::vector<double> extra_values;
  double primal_value = 0.0;
  double dual_value = 0.0;
  int iterations = 0;
  SolverResiduals residuals;
  std::optional<InfeasibilityCertificate> infeasibility;
  std::vector<IterateLog> trace;
  /// Program rows removed by facial reduction. When nonempty the dual is only
  /// feasible on the face: V_m^dagger (X - z_m) V_m >= 0.
  std::vector<int> face_reduced_rows;
  /// Face isometries V_m, filled only when face_reduced_rows is nonempty.
  std::vector<ComplexMatrix> faces;
  std::string message;
};

/// Maps raw dual variables back to (X, lambda). X is de-embedded from the
/// completeness multipliers and symmetrized; lambda_j in [-feas_tol, 0) is
/// clipped to zero.
DualCertificate extract_dual(const SdpStandardForm& form, const SdpIterate& raw,
                             double feas_tol = 1e-8);

/// Primal-dual path-following interior-point method (Mehrotra
/// predictor-corrector, HKM direction). One instance owns its workspace and is
/// not meant to be shared between threads.
class InteriorPointSolver {
 public:
  explicit InteriorPointSolver(SolverConfig config = {});
  const SolverConfig& config() const noexcept { return config_; }

  SolverResult solve(const SdpStandardForm& form);

 private:
  struct Workspace;
  struct PhaseOutcome;

  PhaseOutcome run(const SdpStandardForm& form, int phase, std::vector<IterateLog>* trace);

  SolverConfig config_;
};

SolverResult solve(const SdpStandardForm& form, const SolverConfig& config = {});
SolverResult solve(const PovmProgram& program, const SolverConfig& config = {});
SolverResult solve(const DiscriminationProblem& problem, const SolverConfig& config = {});

}  // namespace povmopt

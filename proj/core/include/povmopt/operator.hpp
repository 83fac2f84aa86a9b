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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "povmopt/tolerances.hpp"

namespace povmopt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Dense complex Hermitian matrix of dimension d >= 1.
///
/// Instances are immutable values. The only ways to obtain one are the
/// validating factories, so `matrix()` is always exactly Hermitian: entry (j,i)
/// is the bitwise conjugate of entry (i,j) and the diagonal is real.
class HermitianOperator {
 public:
  /// Symmetrizes `a` into (a + a^dagger)/2. Throws AsymmetryTooLarge if
  /// ||a - a^dagger||_F exceeds `tolerance`; throws DimMismatch if `a` is not
  /// square or is empty.
  static HermitianOperator from_matrix(const ComplexMatrix& a,
                                       double tolerance = tol::kHermitian);
  /// Skips the asymmetry check; still symmetrizes.
  static HermitianOperator symmetrized(const ComplexMatrix& a);

  static HermitianOperator zero(int dim);
  static HermitianOperator identity(int dim);
  /// |v><v| (v is used as given, not normalized).
  static HermitianOperator projector(const ComplexVector& v);
  static HermitianOperator diagonal(std::span<const double> entries);

  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Complex operator()(int i, int j) const { return matrix_(i, j); }

  /// Frobenius norm of (A - A^dagger) measured on the raw input before
  /// symmetrization.
  double input_asymmetry() const noexcept { return input_asymmetry_; }

  double trace() const;
  double frobenius_norm() const { return matrix_.norm(); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator-() const;
  HermitianOperator operator*(double s) const;
  friend HermitianOperator operator*(double s, const HermitianOperator& a) { return a * s; }

  /// Exact entrywise comparison.
  bool operator==(const HermitianOperator& other) const;

 private:
  explicit HermitianOperator(ComplexMatrix m, double asymmetry)
      : matrix_(std::move(m)), input_asymmetry_(asymmetry) {}

  ComplexMatrix matrix_;
  double input_asymmetry_ = 0.0;
};

/// ||A - B||_F. Throws DimMismatch.
double distance(const HermitianOperator& a, const HermitianOperator& b);

HermitianOperator validate_hermitian(const ComplexMatrix& a, double tolerance = tol::kHermitian);

/// Ascending eigenvalues from a full self-adjoint decomposition.
Eigen::VectorXd eigenvalues(const HermitianOperator& a);
double min_eigenvalue(const HermitianOperator& a);
bool is_psd(const HermitianOperator& a, double tolerance = tol::kPsd);

/// Re Tr(AB). Throws DimMismatch; the imaginary residue is asserted small.
double trace_pair(const HermitianOperator& a, const HermitianOperator& b);

/// Sum of absolute eigenvalues.
double trace_norm(const HermitianOperator& a);

/// Positive square root and inverse square root of a positive definite operator.
HermitianOperator sqrt_psd(const HermitianOperator& a);
HermitianOperator inverse_sqrt_pd(const HermitianOperator& a);

/// U A U^dagger (symmetrized); U need not be unitary.
HermitianOperator congruence(const ComplexMatrix& u, const HermitianOperator& a);

class DensityOperator {
 public:
  /// Throws InvalidState when `op` is not PSD within tol::kPsd or its trace is
  /// not 1 within tol::kTrace.
  static DensityOperator make(HermitianOperator op);
  /// Normalized pure state |psi><psi| / <psi|psi>.
  static DensityOperator pure(const ComplexVector& psi);

  const HermitianOperator& op() const noexcept { return op_; }
  int dim() const noexcept { return op_.dim(); }

 private:
  explicit DensityOperator(HermitianOperator op) : op_(std::move(op)) {}
  HermitianOperator op_;
};

struct PovmResiduals {
  double min_eigenvalue = 0.0;  ///< Smallest eigenvalue over all outcomes.
  double completeness = 0.0;    ///< ||sum_m Pi_m - 1||_F.

  bool valid(double psd_tol = tol::kPsd, double comp_tol = tol::kCompleteness) const {
    return min_eigenvalue >= -psd_tol && completeness <= comp_tol;
  }
};

/// A candidate measurement {Pi_m}.
class Povm {
 public:
  /// Validates PSD and completeness; throws InvalidState otherwise.
  static Povm make(std::vector<HermitianOperator> outcomes, double psd_tol = tol::kPsd,
                   double comp_tol = tol::kCompleteness);
  /// Only checks that the outcomes are nonempty and share a dimension. Used
  /// for candidates that are to be inspected rather than trusted.
  static Povm unchecked(std::vector<HermitianOperator> outcomes);
  /// Pi_m = 1/M for every m.
  static Povm uniform(int dim, int outcomes);

  int size() const noexcept { return static_cast<int>(outcomes_.size()); }
  int dim() const noexcept { return outcomes_.front().dim(); }
  const HermitianOperator& operator[](int m) const { return outcomes_.at(static_cast<std::size_t>(m)); }
  const std::vector<HermitianOperator>& outcomes() const noexcept { return outcomes_; }

  PovmResiduals residuals() const;

  /// Pi_m -> S^{-1/2} Pi_m S^{-1/2} with S = sum_m Pi_m. Restores exact
  /// completeness (up to rounding) while keeping every outcome PSD.
  Povm completed() const;

 private:
  explicit Povm(std::vector<HermitianOperator> outcomes) : outcomes_(std::move(outcomes)) {}
  std::vector<HermitianOperator> outcomes_;
};

/// Tr(rho Pi_m) for every m.
std::vector<double> outcome_probabilities(const DensityOperator& rho, const Povm& povm);

class StateEnsemble {
 public:
  /// Throws InvalidState / CountMismatch on inconsistent input.
  static StateEnsemble make(std::vector<DensityOperator> states, std::vector<double> priors);
  /// Equal priors 1/R.
  static StateEnsemble equiprobable(std::vector<DensityOperator> states);

  int size() const noexcept { return static_cast<int>(states_.size()); }
  int dim() const noexcept { return states_.front().dim(); }
  const DensityOperator& state(int r) const { return states_.at(static_cast<std::size_t>(r)); }
  double prior(int r) const { return priors_.at(static_cast<std::size_t>(r)); }
  const std::vector<DensityOperator>& states() const noexcept { return states_; }
  const std::vector<double>& priors() const noexcept { return priors_; }

  /// G = sum_r xi_r rho_r, computed once at construction.
  const HermitianOperator& average_state() const noexcept { return average_; }
  /// xi_r rho_r.
  HermitianOperator weighted_state(int r) const;

 private:
  StateEnsemble(std::vector<DensityOperator> states, std::vector<double> priors,
                HermitianOperator average)
      : states_(std::move(states)), priors_(std::move(priors)), average_(std::move(average)) {}

  std::vector<DensityOperator> states_;
  std::vector<double> priors_;
  HermitianOperator average_;
};

enum class EnsembleKind { Pure, Mixed };

/// Haar-random pure states (normalized complex Gaussian vectors) or random
/// mixed states (W W^dagger / Tr, W complex Gaussian d x d) with priors drawn
/// uniformly from the simplex. Reproducible for a fixed seed.
StateEnsemble random_ensemble(int dim, int count, EnsembleKind kind, std::uint64_t seed);

/// Haar-random unitary (QR of a complex Gaussian matrix with phase fix).
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

}  // namespace povmopt

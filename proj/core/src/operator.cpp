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

#include "povmopt/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "povmopt/errors.hpp"

namespace povmopt {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  ComplexMatrix h(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = Complex(a(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension " << a.dim() << " vs " << b.dim();
    throw DimMismatch(msg.str());
  }
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> decompose(const HermitianOperator& a, bool vectors) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      a.matrix(), vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw EigDecompositionFailed("self-adjoint eigendecomposition did not converge");
  }
  return es;
}

HermitianOperator spectral_map(const HermitianOperator& a, double (*f)(double)) {
  auto es = decompose(a, true);
  Eigen::VectorXd mapped = es.eigenvalues().unaryExpr(f);
  const ComplexMatrix& v = es.eigenvectors();
  return HermitianOperator::symmetrized(v * mapped.cast<Complex>().asDiagonal() * v.adjoint());
}

}  // namespace

AsymmetryTooLarge::AsymmetryTooLarge(double asymmetry, double tolerance)
    : Error([&] {
        std::ostringstream msg;
        msg << "matrix is not Hermitian: ||A - A^dagger||_F = " << asymmetry << " > " << tolerance;
        return msg.str();
      }()),
      asymmetry_(asymmetry) {}

HermitianOperator HermitianOperator::from_matrix(const ComplexMatrix& a, double tolerance) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream msg;
    msg << "expected a nonempty square matrix, got " << a.rows() << "x" << a.cols();
    throw DimMismatch(msg.str());
  }
  const double asym = (a - a.adjoint()).norm();
  if (!(asym <= tolerance)) throw AsymmetryTooLarge(asym, tolerance);
  return HermitianOperator(hermitian_part(a), asym);
}

HermitianOperator HermitianOperator::symmetrized(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw DimMismatch("expected a nonempty square matrix");
  return HermitianOperator(hermitian_part(a), (a - a.adjoint()).norm());
}

HermitianOperator HermitianOperator::zero(int dim) {
  if (dim < 1) throw InvalidParameter("dimension must be >= 1");
  return HermitianOperator(ComplexMatrix::Zero(dim, dim), 0.0);
}

HermitianOperator HermitianOperator::identity(int dim) {
  if (dim < 1) throw InvalidParameter("dimension must be >= 1");
  return HermitianOperator(ComplexMatrix::Identity(dim, dim), 0.0);
}

HermitianOperator HermitianOperator::projector(const ComplexVector& v) {
  if (v.size() == 0) throw DimMismatch("empty vector");
  return symmetrized(v * v.adjoint());
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> entries) {
  if (entries.empty()) throw DimMismatch("empty diagonal");
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(entries.size()),
                                        static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = entries[i];
  }
  return HermitianOperator(std::move(m), 0.0);
}

double HermitianOperator::trace() const { return matrix_.diagonal().real().sum(); }

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  require_same_dim(*this, other, "operator+");
  return HermitianOperator(hermitian_part(matrix_ + other.matrix_), 0.0);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  require_same_dim(*this, other, "operator-");
  return HermitianOperator(hermitian_part(matrix_ - other.matrix_), 0.0);
}

HermitianOperator HermitianOperator::operator-() const {
  return HermitianOperator(-matrix_, 0.0);
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(hermitian_part(s * matrix_), 0.0);
}

bool HermitianOperator::operator==(const HermitianOperator& other) const {
  return dim() == other.dim() && matrix_ == other.matrix_;
}

double distance(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b, "distance");
  return (a.matrix() - b.matrix()).norm();
}

HermitianOperator validate_hermitian(const ComplexMatrix& a, double tolerance) {
  return HermitianOperator::from_matrix(a, tolerance);
}

Eigen::VectorXd eigenvalues(const HermitianOperator& a) { return decompose(a, false).eigenvalues(); }

double min_eigenvalue(const HermitianOperator& a) { return eigenvalues(a)(0); }

bool is_psd(const HermitianOperator& a, double tolerance) { return min_eigenvalue(a) >= -tolerance; }

double trace_pair(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b, "trace_pair");
  // Tr(AB) = sum_ij A_ij B_ji
  const Complex t = (a.matrix().array() * b.matrix().transpose().array()).sum();
  if (std::abs(t.imag()) > tol::kTraceImaginary * std::max(1.0, a.frobenius_norm() * b.frobenius_norm())) {
    throw Error("trace_pair: imaginary residue exceeds tolerance");
  }
  return t.real();
}

double trace_norm(const HermitianOperator& a) { return eigenvalues(a).cwiseAbs().sum(); }

HermitianOperator sqrt_psd(const HermitianOperator& a) {
  return spectral_map(a, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

HermitianOperator inverse_sqrt_pd(const HermitianOperator& a) {
  if (!(min_eigenvalue(a) > 0.0)) throw InvalidState("inverse_sqrt_pd: operator is not positive definite");
  return spectral_map(a, [](double x) { return 1.0 / std::sqrt(x); });
}

HermitianOperator congruence(const ComplexMatrix& u, const HermitianOperator& a) {
  if (u.cols() != a.dim()) throw DimMismatch("congruence: shape mismatch");
  return HermitianOperator::symmetrized(u * a.matrix() * u.adjoint());
}

// ---------------------------------------------------------------------------

DensityOperator DensityOperator::make(HermitianOperator op) {
  const double lmin = min_eigenvalue(op);
  if (lmin < -tol::kPsd) {
    std::ostringstream msg;
    msg << "density operator is not PSD (min eigenvalue " << lmin << ")";
    throw InvalidState(msg.str());
  }
  if (std::abs(op.trace() - 1.0) > tol::kTrace) {
    std::ostringstream msg;
    msg << "density operator trace " << op.trace() << " != 1";
    throw InvalidState(msg.str());
  }
  return DensityOperator(std::move(op));
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw InvalidState("pure state from zero vector");
  return make(HermitianOperator::projector(psi / n));
}

// ---------------------------------------------------------------------------

Povm Povm::unchecked(std::vector<HermitianOperator> outcomes) {
  if (outcomes.empty()) throw OutcomeCountMismatch("a POVM needs at least one outcome");
  for (const auto& o : outcomes) {
    if (o.dim() != outcomes.front().dim()) throw DimMismatch("POVM outcomes have different dimensions");
  }
  return Povm(std::move(outcomes));
}

Povm Povm::make(std::vector<HermitianOperator> outcomes, double psd_tol, double comp_tol) {
  Povm p = unchecked(std::move(outcomes));
  const PovmResiduals r = p.residuals();
  if (!r.valid(psd_tol, comp_tol)) {
    std::ostringstream msg;
    msg << "not a POVM: min eigenvalue " << r.min_eigenvalue << ", completeness residual "
        << r.completeness;
    throw InvalidState(msg.str());
  }
  return p;
}

Povm Povm::uniform(int dim, int outcomes) {
  if (outcomes < 1) throw OutcomeCountMismatch("a POVM needs at least one outcome");
  std::vector<HermitianOperator> ops(static_cast<std::size_t>(outcomes),
                                     HermitianOperator::identity(dim) * (1.0 / outcomes));
  return Povm(std::move(ops));
}

PovmResiduals Povm::residuals() const {
  PovmResiduals r;
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  ComplexMatrix sum = -ComplexMatrix::Identity(dim(), dim());
  for (const auto& o : outcomes_) {
    r.min_eigenvalue = std::min(r.min_eigenvalue, min_eigenvalue(o));
    sum += o.matrix();
  }
  r.completeness = sum.norm();
  return r;
}

Povm Povm::completed() const {
  ComplexMatrix sum = ComplexMatrix::Zero(dim(), dim());
  for (const auto& o : outcomes_) sum += o.matrix();
  const HermitianOperator s_inv_half = inverse_sqrt_pd(HermitianOperator::symmetrized(sum));
  std::vector<HermitianOperator> out;
  out.reserve(outcomes_.size());
  for (const auto& o : outcomes_) out.push_back(congruence(s_inv_half.matrix(), o));
  return Povm(std::move(out));
}

std::vector<double> outcome_probabilities(const DensityOperator& rho, const Povm& povm) {
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(povm.size()));
  for (const auto& o : povm.outcomes()) p.push_back(trace_pair(rho.op(), o));
  return p;
}

// ---------------------------------------------------------------------------

StateEnsemble StateEnsemble::make(std::vector<DensityOperator> states, std::vector<double> priors) {
  if (states.empty()) throw CountMismatch("an ensemble needs at least one state");
  if (states.size() != priors.size()) {
    std::ostringstream msg;
    msg << states.size() << " states but " << priors.size() << " priors";
    throw CountMismatch(msg.str());
  }
  const int d = states.front().dim();
  double total = 0.0;
  for (std::size_t r = 0; r < states.size(); ++r) {
    if (states[r].dim() != d) throw DimMismatch("ensemble states have different dimensions");
    if (!(priors[r] >= 0.0)) throw InvalidState("prior probabilities must be nonnegative");
    total += priors[r];
  }
  if (std::abs(total - 1.0) > tol::kProbability) {
    std::ostringstream msg;
    msg << "prior probabilities sum to " << total;
    throw InvalidState(msg.str());
  }
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  for (std::size_t r = 0; r < states.size(); ++r) g += priors[r] * states[r].op().matrix();
  return StateEnsemble(std::move(states), std::move(priors), HermitianOperator::symmetrized(g));
}

StateEnsemble StateEnsemble::equiprobable(std::vector<DensityOperator> states) {
  const std::size_t n = states.size();
  if (n == 0) throw CountMismatch("an ensemble needs at least one state");
  return make(std::move(states), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

HermitianOperator StateEnsemble::weighted_state(int r) const { return state(r).op() * prior(r); }

namespace {

ComplexMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  ComplexMatrix w(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = n01(rng);
      const double im = n01(rng);
      w(i, j) = Complex(re, im);
    }
  }
  return w;
}

}  // namespace

StateEnsemble random_ensemble(int dim, int count, EnsembleKind kind, std::uint64_t seed) {
  if (dim < 1) throw InvalidParameter("dimension must be >= 1");
  if (count < 1) throw InvalidParameter("state count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<DensityOperator> states;
  states.reserve(static_cast<std::size_t>(count));
  for (int r = 0; r < count; ++r) {
    if (kind == EnsembleKind::Pure) {
      const ComplexVector psi = gaussian_matrix(dim, 1, rng).col(0);
      states.push_back(DensityOperator::pure(psi));
    } else {
      const ComplexMatrix w = gaussian_matrix(dim, dim, rng);
      const ComplexMatrix rho = w * w.adjoint();
      const double t = rho.trace().real();
      auto h = HermitianOperator::symmetrized(rho / t);
      // renormalize after symmetrization so the trace is 1 to rounding
      states.push_back(DensityOperator::make(h * (1.0 / h.trace())));
    }
  }
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> priors(static_cast<std::size_t>(count));
  for (auto& p : priors) p = exp1(rng);
  const double total = std::accumulate(priors.begin(), priors.end(), 0.0);
  for (auto& p : priors) p /= total;
  return StateEnsemble::make(std::move(states), std::move(priors));
}

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

}  // namespace povmopt

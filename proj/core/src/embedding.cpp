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

Eigen::MatrixXd embed(const ComplexMatrix& h) {
  const Eigen::Index d = h.rows();
  Eigen::MatrixXd y(2 * d, 2 * d);
  y.topLeftCorner(d, d) = h.real();
  y.bottomRightCorner(d, d) = h.real();
  y.topRightCorner(d, d) = -h.imag();
  y.bottomLeftCorner(d, d) = h.imag();
  return y;
}

Eigen::MatrixXd embed(const HermitianOperator& h) { return embed(h.matrix()); }

HermitianOperator de_embed(const Eigen::MatrixXd& y) {
  if (y.rows() != y.cols() || y.rows() % 2 != 0 || y.rows() == 0) {
    std::ostringstream msg;
    msg << "cannot de-embed a " << y.rows() << "x" << y.cols() << " matrix";
    throw DimMismatch(msg.str());
  }
  const Eigen::Index d = y.rows() / 2;
  const Eigen::MatrixXd re = 0.5 * (y.topLeftCorner(d, d) + y.bottomRightCorner(d, d));
  const Eigen::MatrixXd im = 0.5 * (y.bottomLeftCorner(d, d) - y.topRightCorner(d, d));
  ComplexMatrix h(d, d);
  h.real() = re;
  h.imag() = im;
  return HermitianOperator::symmetrized(h);
}

Eigen::MatrixXd complex_structure(int dim) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * dim, 2 * dim);
  j.topRightCorner(dim, dim) = -Eigen::MatrixXd::Identity(dim, dim);
  j.bottomLeftCorner(dim, dim) = Eigen::MatrixXd::Identity(dim, dim);
  return j;
}

double complex_structure_residual(const Eigen::MatrixXd& y) {
  const Eigen::Index d = y.rows() / 2;
  // [Y, J] written out blockwise to avoid forming J.
  const auto a = y.topLeftCorner(d, d);
  const auto b = y.topRightCorner(d, d);
  const auto c = y.bottomLeftCorner(d, d);
  const auto e = y.bottomRightCorner(d, d);
  const double r1 = (b + c).squaredNorm();
  const double r2 = (e - a).squaredNorm();
  return std::sqrt(2.0 * (r1 + r2));
}

}  // namespace povmopt

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

namespace povmopt::tol {

// Interior-point output carries noise around sqrt(machine epsilon), so the
// acceptance thresholds below are deliberately wider than 1e-15.
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPsd = 1e-8;
inline constexpr double kTrace = 1e-10;
inline constexpr double kCompleteness = 1e-8;
inline constexpr double kProbability = 1e-10;

/// Imaginary residue allowed in Tr(AB) for Hermitian A, B.
inline constexpr double kTraceImaginary = 1e-10;

/// Default tolerance of the certificate checks.
inline constexpr double kCertificate = 1e-6;

/// Multipliers in [-kLambdaClamp, 0) are clamped to zero before checking.
inline constexpr double kLambdaClamp = 1e-10;

/// Covariance residuals: inputs and solver-derived objects.
inline constexpr double kCovarianceInput = 1e-9;
inline constexpr double kCovarianceDerived = 1e-8;

/// Unitarity check of group representatives.
inline constexpr double kUnitary = 1e-10;

/// Threshold for declaring a minimax probability part of the support.
inline constexpr double kSupport = 1e-6;

}  // namespace povmopt::tol

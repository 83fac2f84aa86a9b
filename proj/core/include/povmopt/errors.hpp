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

#include <stdexcept>
#include <string>

namespace povmopt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AsymmetryTooLarge : public Error {
 public:
  AsymmetryTooLarge(double asymmetry, double tolerance);
  double asymmetry() const noexcept { return asymmetry_; }

 private:
  double asymmetry_;
};

class DimMismatch : public Error {
 public:
  using Error::Error;
};

class OutcomeCountMismatch : public Error {
 public:
  using Error::Error;
};

class CountMismatch : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class EigDecompositionFailed : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A value that should be a POVM / density operator / ensemble is not one.
class InvalidState : public Error {
 public:
  using Error::Error;
};

class InvalidGroup : public Error {
 public:
  using Error::Error;
};

class CovarianceViolation : public Error {
 public:
  using Error::Error;
};

/// Raised when an inner solve needed by a higher-level routine does not reach
/// an optimal status.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace povmopt

// Copyright 2026 The kerrcoupler Authors
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

#ifndef KERR_ERRORS_HPP
#define KERR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kerr {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: dimensions, parameters, config files. CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numeric failure during an otherwise valid computation. CLI exit code 2.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Analytic three-state solution requested with alpha = epsilon = 0.
class DegenerateParams : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Hamiltonian handed to the propagator factory is not Hermitian.
class NotHermitian : public NumericError {
 public:
  using NumericError::NumericError;
};

// Adaptive integrator cannot meet the error tolerance at the minimum step.
class StepSizeTooLarge : public NumericError {
 public:
  using NumericError::NumericError;
};

// Liouvillian is not diagonalizable to working precision (spectral method).
class EigendecompositionFailed : public NumericError {
 public:
  using NumericError::NumericError;
};

// State has negligible weight in the {0,2}x{0,2} subspace being projected on.
class NearZeroSupport : public NumericError {
 public:
  using NumericError::NumericError;
};

// Matrix required to be positive semidefinite has an eigenvalue below the
// clamping threshold.
class NotPSD : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace kerr

#endif  // KERR_ERRORS_HPP

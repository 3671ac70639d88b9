// Copyright 2026 The qbath Authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QBATH_ERRORS_HPP
#define QBATH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qbath {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Base for failures of a numerical procedure on valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its evaluation budget.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double value, double error_estimate)
      : NumericalError(what), value_(value), error_estimate_(error_estimate) {}

  double value() const { return value_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double value_;
  double error_estimate_;
};

/// Second moments below the Heisenberg bound q2 * p2 >= hbar^2 / 4.
class UncertaintyViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The model produced a result that contradicts one of its own invariants
/// (a real pole where the continuum is present, a non-positive normal mode).
class InconsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Determinant of the two-lead scattering system vanishes.
class ResonanceSingular : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Channel sums did not settle within the channel budget.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double tail_estimate)
      : NumericalError(what), tail_estimate_(tail_estimate) {}

  double tail_estimate() const { return tail_estimate_; }

 private:
  double tail_estimate_;
};

}  // namespace qbath

#endif  // QBATH_ERRORS_HPP

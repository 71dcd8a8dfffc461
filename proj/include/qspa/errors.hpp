// Copyright 2026 The qspa Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace qspa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subsystem index is out of range or repeated.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotPrimeError : public DomainError {
 public:
  explicit NotPrimeError(std::size_t d)
      : DomainError("dimension " + std::to_string(d) + " is not prime"), dim(d) {}
  std::size_t dim;
};

/// The Heisenberg-Weyl orbit of a fiducial is not equiangular.
class NotSICError : public Error {
 public:
  NotSICError(std::size_t j, std::size_t k, double dev)
      : Error("orbit is not a SIC: worst pair (" + std::to_string(j) + ", " +
              std::to_string(k) + ") deviates by " + std::to_string(dev)),
        worst_pair(j, k),
        deviation(dev) {}
  std::pair<std::size_t, std::size_t> worst_pair;
  double deviation;
};

class SearchFailed : public Error {
 public:
  explicit SearchFailed(double residual)
      : Error("fiducial search did not converge, best residual " +
              std::to_string(residual)),
        best_residual(residual) {}
  double best_residual;
};

/// A CJ matrix violates tr_out(chi) = 1/d_in.
class NotTracePreserving : public Error {
 public:
  explicit NotTracePreserving(double r)
      : Error("CJ marginal deviates from 1/d by " + std::to_string(r)),
        residual(r) {}
  double residual;
};

/// No index convention reproduces the SIC effects from the two-step
/// measurement. The message carries the residual table.
class ConventionMismatch : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A parsed state failed one of the density matrix checks.
class ValidationError : public Error {
 public:
  ValidationError(std::string which, double r)
      : Error("validation failed: " + which + " (residual " +
              std::to_string(r) + ")"),
        check(std::move(which)),
        residual(r) {}
  std::string check;
  double residual;
};

}  // namespace qspa

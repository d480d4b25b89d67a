// Copyright 2026 The Centripetal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CENTRIPETAL_ERRORS_HPP_
#define CENTRIPETAL_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace centripetal {

// Root of every error the toolkit throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range call arguments.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Capability outside the profile's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A primitive or derived quantity came out non-finite.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Cost asymmetry too large for an interior price equilibrium.
class TippingError : public Error {
 public:
  using Error::Error;
};

// Request is outside what the closed forms cover (e.g. derivatives at a
// clamped boundary solution).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// A finite-difference stencil crossed the domain edge or the boundary regime.
class StencilError : public Error {
 public:
  using Error::Error;
};

class EstimationError : public Error {
 public:
  using Error::Error;
};

// A primitive shift that leaves t or kappa non-positive.
class ShiftRejected : public Error {
 public:
  using Error::Error;
};

// Viability crosses zero more than once on the scanned interval.
class MonotonicityError : public Error {
 public:
  MonotonicityError(std::string what,
                    std::vector<std::pair<double, double>> intervals)
      : Error(std::move(what)), intervals_(std::move(intervals)) {}

  const std::vector<std::pair<double, double>>& intervals() const {
    return intervals_;
  }

 private:
  std::vector<std::pair<double, double>> intervals_;
};

struct FieldError {
  std::string path;
  std::string message;
};

// Configuration validation failure; carries every offending field at once.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<FieldError> errors);

  const std::vector<FieldError>& errors() const { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace centripetal

#endif  // CENTRIPETAL_ERRORS_HPP_

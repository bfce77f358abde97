// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairscore {

// Base of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent input: bad samples, malformed tables, mismatched
// shapes. A CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Failure inside a numerical routine (non-convergence, indefinite matrices).
// A CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class EmptySampleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidValueError : public ValidationError {
 public:
  InvalidValueError(const std::string& what, std::size_t index)
      : ValidationError(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BinRangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EdgeMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Signals an infinite KL divergence: q assigns zero mass where p does not.
class SupportError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SizeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownGroupError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateGroupError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MissingOutcomeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class JoinError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularSourceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : NumericalError(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

// CSV parse failure; line numbers are 1-based and include the header.
class CsvError : public ValidationError {
 public:
  CsvError(const std::string& what, std::size_t line)
      : ValidationError(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fairscore

#pragma once

#include <stdexcept>
#include <string>

namespace nahm {

// Base of every error raised by the library. Inputs the user got wrong derive
// from InputError so front ends can map them to a distinct exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class LabelError : public InputError {
 public:
  using InputError::InputError;
};

// Offsets of two summands are not congruent on the common lattice.
class LatticeError : public Error {
 public:
  using Error::Error;
};

// A coefficient beyond the known range of a truncated series was requested.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class ZeroLeadingCoefficientError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public InputError {
 public:
  using InputError::InputError;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::string last_residual)
      : Error(what), last_residual_(std::move(last_residual)) {}
  const std::string& last_residual() const noexcept { return last_residual_; }

 private:
  std::string last_residual_;
};

// Laurent division in z left a remainder. Indicates a bug, never bad input.
class DivisionError : public Error {
 public:
  using Error::Error;
};

class AmbiguousMatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace nahm

#pragma once

#include <stdexcept>
#include <string>

namespace krein {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// NaN or Inf where a finite number is required.
class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be inverted is singular to working precision.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold (unstable parameters,
/// indefinite JC, infeasible chi equation, ...).
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside the real domain of a Weyl function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration (oracle grid, sweep spec, expression text).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace krein

#pragma once

#include <stdexcept>

namespace mcchan {

/// Base class of all mcchan errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A derived per-step probability falls outside [0,1], or a self-transition
/// would turn negative for the requested discretization.
class StabilityViolation : public Error {
 public:
  using Error::Error;
};

/// State count or receiver index out of the supported range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// dx or dt is zero or negative.
class NonPositiveStep : public Error {
 public:
  using Error::Error;
};

/// Vector length does not match the model dimension.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// (I - Q) is singular; the equilibrium is not defined.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// A particle-simulation result is compared against a trajectory produced
/// under a different schedule or step count.
class ScheduleMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed config/scenario text: syntax, unknown key, bad number.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mcchan

#pragma once

#include <stdexcept>
#include <string>

namespace tailcord {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing, extra or out-of-range model parameters.
class InvalidModelError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Conditioning event has (numerically) zero probability.
class ConditioningDegenerateError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for the model family.
class UnsupportedFamilyError : public Error {
 public:
  using Error::Error;
};

/// Paired sequences of different length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Result would carry no significant digits.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Empirical estimator has nothing to estimate from.
class EstimationError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent inputs to a validation run.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to reach its tolerance. Carries the best
/// estimate found so callers may still report it.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : Error(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

}  // namespace tailcord

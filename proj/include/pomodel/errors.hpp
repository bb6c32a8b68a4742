#pragma once

#include <stdexcept>
#include <string>

namespace pomodel {

/// Argument outside the mathematical domain of an operation (negative time,
/// nonpositive parameter).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quantity not representable at the requested point, e.g. a hazard where the
/// survival function has underflowed to zero.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Two vectors that must share a length do not.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed grid, scenario, or case description.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A function sampled on a grid produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double t)
      : std::runtime_error(what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

/// A constructive random generator could not satisfy its constraint.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pomodel

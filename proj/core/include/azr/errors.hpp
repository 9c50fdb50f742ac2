#pragma once

#include <stdexcept>
#include <string>

namespace azr {

/// Matrix shapes do not fit an operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input contains NaN/Inf or is otherwise outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operator inequality or ordering precondition failed. Carries the
/// eigenvalue that witnesses the failure.
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(const std::string& what, double offending_value)
      : std::invalid_argument(what), value_(offending_value) {}
  double offending_value() const { return value_; }

 private:
  double value_;
};

}  // namespace azr

#pragma once

#include <stdexcept>
#include <string>

namespace zetadiff {

/// Argument outside the function's domain (pole, negative order, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Working precision too small for the requested result.
struct BudgetError : std::runtime_error {
  BudgetError(const std::string& what, long required)
      : std::runtime_error(what), required_digits(required) {}
  long required_digits;
};

/// A truncation or tail bound could not be brought below tolerance.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input table or configuration.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateSaddleError : std::domain_error {
  using std::domain_error::domain_error;
};

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A computed coefficient exceeded the envelope used to bound a series tail.
struct EnvelopeViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace zetadiff

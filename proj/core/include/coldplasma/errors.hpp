#pragma once

#include <stdexcept>
#include <string>

namespace coldplasma {

// Non-finite or otherwise out-of-domain argument to a physics function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configuration or input value failed validation. `field` names the
// offending key when one is known.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& message, std::string field = {})
      : std::invalid_argument(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Initial data produce a non-monotone Lagrangian map at grid scale.
class InvalidInitialData : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// An analytic predicate was asked to decide outside its stated parameter range.
class NotApplicable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Query outside the particle hull.
class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Ensemble is no longer classical (trajectories crossed).
class InvalidState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bisection bracket does not straddle the breaking threshold.
class InvalidBracket : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Config text could not be parsed; carries the 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error(message), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace coldplasma

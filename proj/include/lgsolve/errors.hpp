#pragma once

#include <stdexcept>
#include <string>

namespace lgsolve {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A builder or operation received an argument outside its domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Forced-in and forced-out constraints overlap, or problem data is
/// inconsistent (psi1 > psi2, f > g).
class InfeasibleConstraints : public Error {
 public:
  using Error::Error;
};

/// A vertex function is undefined where a value is required.
class MissingValue : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a solver bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lgsolve

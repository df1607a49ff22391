#pragma once

#include <stdexcept>
#include <string>

namespace fracradon {

/// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (q range, dimension, sign).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gamma-function pole hit (nonpositive integer argument).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// q inside the odd-integer guard band on the generic fractional-derivative path.
class OddOrderError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative numerical procedure did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last, double previous)
      : Error(what), last_(last), previous_(previous) {}
  double last() const { return last_; }
  double previous() const { return previous_; }

 private:
  double last_;
  double previous_;
};

/// A numerical error budget (truncation, aliasing, clamping) was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracradon

#pragma once

#include <stdexcept>
#include <string>

namespace bosecrit {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A positivity or finiteness requirement on a physical input failed.
class NonPhysical : public Error {
public:
  using Error::Error;
};

/// Two redundant parameters were supplied and disagree.
class InconsistentParameters : public Error {
public:
  using Error::Error;
};

/// Iterative procedure (series, fixed point, root bracket) did not converge.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

class QuadratureError : public ConvergenceError {
public:
  using ConvergenceError::ConvergenceError;
};

/// Evaluation exactly at the (1 - T_r)^-1 pole.
class PoleError : public Error {
public:
  using Error::Error;
};

/// Scenario text could not be parsed.  `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

/// Scenario parsed but does not describe a usable parameter set.
class ValidationError : public Error {
public:
  using Error::Error;
};

}  // namespace bosecrit

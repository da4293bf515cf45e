#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpuniq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number of the offending line.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A function was evaluated outside its declared domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Ball expansion visited more vertices than the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter violates a required inequality; the message names it.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The inputs of a check do not satisfy its hypotheses.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class PotentialError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpuniq

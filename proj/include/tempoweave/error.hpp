#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tempoweave {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (formula, scenario, bindings, schedule, trace).
/// Line and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// what() without the position prefix.
  const std::string& message() const { return message_; }

private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// A name that does not resolve: unknown agent, task, kind or proposition,
/// duplicate declarations and dangling references.
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// A rule or operation was applied outside its precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// An event arrived with a timestamp earlier than the previous one.
class TimeRegressionError : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

/// Scripted environment ran out of entries in strict mode.
class PolicyExhaustedError : public Error {
public:
  using Error::Error;
};

/// Broken internal invariant. Indicates a bug, never bad input.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace tempoweave

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psync {

/// Base of every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed automaton, word or code document.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An operation was called on an input outside its domain
/// (not strongly connected, empty set, wrong code size, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The automaton has no reset word.
class NotSynchronizingError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A desk-scale guardrail was exceeded (oracle state count, enumeration cap).
class LimitError : public Error {
 public:
  using Error::Error;
};

/// An internal postcondition failed. Indicates a bug, never bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace psync

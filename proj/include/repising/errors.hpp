#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace repising {

/// A caller broke an operation's precondition (length mismatch, bad index).
class ContractViolation : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input text. Line and column are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, std::size_t line = 0,
             std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// A solver declined an instance that exceeds its capability guard.
class SolverRefusal : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace repising

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqdr {

/// Malformed input text. Carries a 1-based line/column when known (0 otherwise).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates an algebraic axiom (Jacobi, d^2 = 0, missing unit, ...).
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two computations that must agree did not. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Boundaries not contained in cycles: d^2 != 0 somewhere upstream.
class InvalidComplexError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace eqdr

#ifndef PPCOMP_ERROR_HPP
#define PPCOMP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppcomp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Well-formed input that violates a domain invariant (arity, unknown
// element, free/bound clash, invalid package, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An exhaustive procedure would exceed its configured enumeration guard.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace ppcomp

#endif  // PPCOMP_ERROR_HPP

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symchain {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingMismatch : public Error {
 public:
  using Error::Error;
};

class NonUnit : public Error {
 public:
  using Error::Error;
};

class UnsupportedRing : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class TwoNotUnit : public Error {
 public:
  using Error::Error;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        detail_(what),
        line_(line),
        column_(column) {}

  /// Message without the position suffix.
  const std::string& detail() const { return detail_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed scalar text naming something outside the ring, such as an
/// unknown variable or a denominator that is not a unit.
class ForeignElement : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace symchain

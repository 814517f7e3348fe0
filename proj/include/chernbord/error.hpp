#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace chernbord {

/// Base of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source-located syntax error with the set of tokens that would have been accepted.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string message,
             std::vector<std::string> expected = {})
      : Error(format(line, column, message, expected)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& message,
                            const std::vector<std::string>& expected) {
    std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) {
      out += " (expected one of:";
      for (const auto& e : expected) out += " " + e;
      out += ")";
    }
    return out;
  }

  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

/// Group or block structure mismatch (word vs. subgroup, sum of classes over different groups, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

/// Power series from different algebra descriptors were combined.
class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

/// The truncation bound is too small for what was asked.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Index outside its admissible range (double coset index, Chern index, ...).
class RangeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedArrow : public Error {
 public:
  using Error::Error;
};

class UnsupportedRepresentation : public Error {
 public:
  using Error::Error;
};

/// The rewrite engine hit its step bound: a rule interaction failed to terminate.
class RewriteBoundExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug, never a user error.
class DefectError : public Error {
 public:
  using Error::Error;
};

}  // namespace chernbord

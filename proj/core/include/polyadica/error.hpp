#pragma once

#include <stdexcept>
#include <string>

namespace polyadica {

/// Malformed input: unknown element ids, mismatched objects, order axioms violated.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Lexical or syntax error in a text format, with 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }
  int line_;
  int column_;
};

/// A configured enumeration or construction budget was exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two routes that are theorems of each other disagreed. Always an implementation bug.
class ConsistencyViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace polyadica

#pragma once

#include <stdexcept>
#include <string>

namespace stopred {

// Thrown when an operation would exceed its enumeration budget, e.g. a span
// with too many generator rows or a set enumeration with too many (set, row)
// tests. Budgets are checked up front so failures are predictable.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parse failure in a matrix file format, with a 1-based source position.
// `column` is the token (field) index within the line, 0 when the whole line
// is at fault.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column = 0)
      : std::runtime_error("line " + std::to_string(line) +
                           (column > 0 ? ", field " + std::to_string(column) : "") +
                           ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace stopred

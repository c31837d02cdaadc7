#pragma once

#include <stdexcept>
#include <string>

namespace effectkit {

// Syntax or semantic error in document text. Line and column are 1-based; 0
// means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string const& msg, int line = 0, int col = 0)
      : std::runtime_error(format(msg, line, col)), line_(line), col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  static std::string format(std::string const& msg, int line, int col) {
    if (line == 0) return msg;
    std::string s = "line " + std::to_string(line);
    if (col) s += ", column " + std::to_string(col);
    return s + ": " + msg;
  }
  int line_;
  int col_;
};

// Operation not available for the given carrier representation.
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace effectkit

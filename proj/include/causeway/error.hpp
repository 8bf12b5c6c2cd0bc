#ifndef CAUSEWAY_ERROR_HPP
#define CAUSEWAY_ERROR_HPP

#include <stdexcept>
#include <string>

namespace causeway {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Raised while reading any of the text formats; carries a source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Raised when a mechanism cannot produce a value (e.g. division by zero in a
// domain that has no bottom element).
class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace causeway

#endif

#ifndef GRAFT_ERRORS_HPP
#define GRAFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace graft {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::string file, int line, int column, const std::string& message)
      : Error(format(file, line, column, message)),
        file_(std::move(file)),
        line_(line),
        column_(column) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& file, int line, int column,
                            const std::string& message) {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column) +
           ": " + message;
  }

  std::string file_;
  int line_ = 0;
  int column_ = 0;
};

/// Violation of a structural precondition (unknown id, detached node,
/// duplicate qualified name, inheritance cycle, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

}  // namespace graft

#endif

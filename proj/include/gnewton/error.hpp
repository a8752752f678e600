#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gnewton {

enum class ErrorKind {
  SingularMatrix,
  NotSquare,
  DimensionMismatch,
  NonFiniteEvaluation,
  UnknownProblem,
  UnknownGeneralizer,
  ParseError,
  ArityError,
  UnknownIdentifier,
  InvalidStep,
  NoConvergence,
  EmptyWindow,
  NotFixedPoint,
  NoSuccessfulStarts,
  ZeroSuccessRate,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` distinguishes failures.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& what, int line, int column)
      : Error(kind, what + " (line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gnewton

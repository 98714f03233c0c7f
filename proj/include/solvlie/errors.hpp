#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solvlie {

enum class ErrorKind {
  DivisionByZero,
  IncompatibleRadicands,
  NotRealValued,
  DenominatorVanishes,
  Inconsistent,
  AmbientMismatch,
  ParameterizedEntriesUnsupported,
  IrreducibleDegreeTooHigh,
  NonCommutingFamily,
  NotASubalgebra,
  NotAnIdeal,
  AlreadyComplex,
  NotSolvable,
  ParameterizedQuotientUnsupported,
  AmbiguousUnderConstraints,
  MixedGeneratorUnsupported,
  ChainStuck,
  NonDiagonalizableTorus,
  NonRationalWeights,
  ParseError,
  JacobiViolation,
  DuplicateBracket,
  UnknownLabel,
  InvalidArgument,
  Internal,
};

const char* error_kind_name(ErrorKind kind);

// Errors that mean "the input lives outside the supported eigenvalue fields".
bool is_field_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace solvlie

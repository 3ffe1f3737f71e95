#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace degroot {

enum class ErrorCode {
  // topology validation
  NotSquare,
  TooSmall,
  NegativeEntry,
  RowSumViolation,
  NonzeroDiagonal,
  InvalidEdge,
  // structure
  NotStronglyConnected,
  Aperiodic,
  TooLarge,
  InvalidDegree,
  // linear algebra / prediction
  NoConvergence,
  DimensionMismatch,
  LambdaOutOfRange,
  NonUniformLambda,
  NotConvergent,
  Singular,
  LambdaOne,
  // dynamics
  InvalidInitial,
  // file formats
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library. `code()` identifies the violated
/// contract; `what()` carries a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by topology validation. `row()` and `value()` locate the first
/// violated invariant (row is -1 when not applicable).
class ValidationError : public Error {
 public:
  ValidationError(ErrorCode code, int row, double value, const std::string& message)
      : Error(code, message), row_(row), value_(value) {}

  int row() const noexcept { return row_; }
  double value() const noexcept { return value_; }

 private:
  int row_;
  double value_;
};

}  // namespace degroot

#pragma once

#include <stdexcept>
#include <string>

namespace cicc {

/// Failure categories used across the library. Each operation documents
/// which kinds it can raise.
enum class ErrorKind {
  NegativeWeight,
  AllZero,
  InvalidDistribution,
  AbsoluteContinuityViolated,
  ShapeMismatch,
  OverlappingSets,
  UnknownCoordinate,
  TooLarge,
  ThetaOutOfRange,
  SupportViolation,
  UnknownVariable,
  DimensionMismatch,
  VariableMismatch,
  BadBudget,
  EmptyMessageSet,
  ParseError,
  StochasticityError,
  DimensionError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace cicc

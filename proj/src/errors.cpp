#include "cicc/errors.hpp"

namespace cicc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::AbsoluteContinuityViolated: return "AbsoluteContinuityViolated";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::OverlappingSets: return "OverlappingSets";
    case ErrorKind::UnknownCoordinate: return "UnknownCoordinate";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::BadBudget: return "BadBudget";
    case ErrorKind::EmptyMessageSet: return "EmptyMessageSet";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::StochasticityError: return "StochasticityError";
    case ErrorKind::DimensionError: return "DimensionError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace cicc

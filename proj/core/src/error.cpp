#include "degroot/error.hpp"

namespace degroot {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::RowSumViolation: return "RowSumViolation";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::InvalidEdge: return "InvalidEdge";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::Aperiodic: return "Aperiodic";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::NonUniformLambda: return "NonUniformLambda";
    case ErrorCode::NotConvergent: return "NotConvergent";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::LambdaOne: return "LambdaOne";
    case ErrorCode::InvalidInitial: return "InvalidInitial";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace degroot

// SPDX-License-Identifier: Apache-2.0
#include "hypred/error.hpp"

namespace hypred {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::CompositeModulus: return "CompositeModulus";
    case ErrorCode::ResidueCharTwo: return "ResidueCharTwo";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::WrongPointCount: return "WrongPointCount";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::IrrationalBranchPoints: return "IrrationalBranchPoints";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ZeroResidue: return "ZeroResidue";
    case ErrorCode::GenusTooSmall: return "GenusTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ValuationMismatch: return "ValuationMismatch";
    case ErrorCode::InternalInstability: return "InternalInstability";
    case ErrorCode::ResidueCollision: return "ResidueCollision";
    case ErrorCode::ThicknessParity: return "ThicknessParity";
    case ErrorCode::NotTwoLineComponent: return "NotTwoLineComponent";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

bool is_internal(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ValuationMismatch:
    case ErrorCode::InternalInstability:
    case ErrorCode::ResidueCollision:
    case ErrorCode::ThicknessParity:
    case ErrorCode::NotTwoLineComponent:
    case ErrorCode::RankMismatch:
    case ErrorCode::InvariantViolation:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                       std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace hypred

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypred {

enum class ErrorCode {
  // Input errors (CLI exit status 1).
  ParseError,
  NotPrime,
  CompositeModulus,
  ResidueCharTwo,
  DuplicatePoints,
  WrongPointCount,
  NotSquarefree,
  IrrationalBranchPoints,
  ZeroPolynomial,
  ZeroResidue,
  GenusTooSmall,
  InvalidArgument,
  // Internal invariant violations (CLI exit status 2).
  ValuationMismatch,
  InternalInstability,
  ResidueCollision,
  ThicknessParity,
  NotTwoLineComponent,
  RankMismatch,
  InvariantViolation,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// True for codes that signal a bug in the construction rather than bad input.
bool is_internal(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure carrying a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hypred

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypred/branch_config.hpp"

namespace hypred {

/// User input before normalization. Exactly one of coeffs / roots is set.
struct RawInput {
  std::int64_t p = 0;
  std::optional<std::vector<Rational>> coeffs;  // constant term first
  std::optional<std::vector<RawPoint>> roots;
  Rational c{1};

  friend bool operator==(const RawInput&, const RawInput&) = default;
};

/// Accepts the JSON form {"p":5,"roots":["0","5","1","6"],"c":"1"} or the
/// inline form `p=5; c=1; roots=[0,5,1,6]` (also with coeffs=[...]).
///
/// Throws ParseError with a source position for malformed text, and the
/// validation errors of to_branch_config otherwise (prefixed with the location
/// of the offending key).
RawInput parse_input(std::string_view text);

/// Branch points of the input. For coeffs, the roots of the polynomial in
/// ascending order, followed by infinity when the degree is odd.
/// Throws NotPrime, ResidueCharTwo, NotSquarefree, IrrationalBranchPoints,
/// WrongPointCount, DuplicatePoints, InvalidArgument.
std::vector<RawPoint> branch_points(const RawInput& input);

BranchConfig to_branch_config(const RawInput& input);

/// Canonical JSON text of the input; parse_input inverts it.
std::string input_to_json(const RawInput& input);

}  // namespace hypred

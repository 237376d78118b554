// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hypred/rat_poly.hpp"
#include "hypred/rational.hpp"

namespace hypred {

/// A branch point on P^1(Q); std::nullopt is the point at infinity.
using RawPoint = std::optional<Rational>;

/// Records the coordinate change applied to move all branch points into A^1.
struct NormalizationTrace {
  /// True when x |-> 1/(x - shift) was applied.
  bool inverted = false;
  Rational shift;
  /// Position of the point at infinity in the raw list, if there was one.
  std::optional<std::size_t> infinity_index;
};

/// The curve y^2 = c * prod (x - points[i]) with 2g + 2 distinct finite branch points.
struct BranchConfig {
  OddPrime p;
  Rational c;
  std::vector<Rational> points;
  int genus = 0;
  NormalizationTrace trace;

  std::size_t point_count() const { return points.size(); }
  RatPoly polynomial() const;
};

/// Moves a point at infinity (if any) into A^1 via x |-> 1/(x - a), where a is
/// the smallest nonnegative integer that is not a finite branch point. Point
/// indices are preserved; infinity lands on 0.
///
/// Throws ResidueCharTwo / CompositeModulus for bad p, DuplicatePoints,
/// WrongPointCount (odd or fewer than 4), InvalidArgument for c = 0.
BranchConfig normalize_branch_config(std::span<const RawPoint> raw, const Rational& c, std::int64_t p);

/// Convenience for all-finite inputs.
BranchConfig make_branch_config(std::span<const Rational> points, const Rational& c, std::int64_t p);

}  // namespace hypred

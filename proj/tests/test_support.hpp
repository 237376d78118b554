// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <vector>

#include "hypred/branch_config.hpp"
#include "hypred/raw_input.hpp"

namespace hypred::testing {

inline BranchConfig config_of(std::initializer_list<long> points, long c, std::int64_t p) {
  std::vector<Rational> pts(points.begin(), points.end());
  return make_branch_config(pts, Rational(c), p);
}

inline RawInput input_of(std::initializer_list<long> points, long c, std::int64_t p) {
  RawInput in;
  in.p = p;
  in.c = Rational(c);
  in.roots.emplace();
  for (long x : points) in.roots->emplace_back(Rational(x));
  return in;
}

}  // namespace hypred::testing

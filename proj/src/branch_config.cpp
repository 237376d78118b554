// SPDX-License-Identifier: Apache-2.0
#include "hypred/branch_config.hpp"

#include <string>

#include "hypred/error.hpp"

namespace hypred {

RatPoly BranchConfig::polynomial() const { return RatPoly::from_roots(c, points); }

BranchConfig normalize_branch_config(std::span<const RawPoint> raw, const Rational& c, std::int64_t p) {
  const OddPrime prime(p);
  if (raw.size() % 2 != 0 || raw.size() < 4) {
    throw Error(ErrorCode::WrongPointCount,
                "need an even number >= 4 of branch points, got " + std::to_string(raw.size()));
  }
  if (c.is_zero()) throw Error(ErrorCode::InvalidArgument, "leading coefficient c must be nonzero");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (raw[i] == raw[j]) {
        throw Error(ErrorCode::DuplicatePoints,
                    "roots[" + std::to_string(i) + "] and roots[" + std::to_string(j) + "] coincide (" +
                        (raw[i] ? raw[i]->to_string() : std::string("inf")) + ")");
      }
    }
  }

  BranchConfig cfg{.p = prime, .c = c, .points = {}, .genus = static_cast<int>(raw.size() / 2) - 1, .trace = {}};
  std::optional<std::size_t> inf_index;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw[i]) inf_index = i;
  }
  if (!inf_index) {
    for (const auto& pt : raw) cfg.points.push_back(*pt);
    return cfg;
  }

  long a = 0;
  for (;; ++a) {
    bool taken = false;
    for (const auto& pt : raw) taken = taken || (pt && *pt == Rational(a));
    if (!taken) break;
  }
  // y^2 = c prod (x - xi), x = a + 1/X, Y = X^(g+1) y:
  // Y^2 = c prod (a - xi) * X * prod (X - 1/(xi - a)).
  Rational new_c = c;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw[i]) {
      cfg.points.emplace_back();
    } else {
      new_c *= Rational(a) - *raw[i];
      cfg.points.push_back(Rational(1) / (*raw[i] - Rational(a)));
    }
  }
  cfg.c = new_c;
  cfg.trace = NormalizationTrace{.inverted = true, .shift = Rational(a), .infinity_index = inf_index};
  return cfg;
}

BranchConfig make_branch_config(std::span<const Rational> points, const Rational& c, std::int64_t p) {
  std::vector<RawPoint> raw(points.begin(), points.end());
  return normalize_branch_config(raw, c, p);
}

}  // namespace hypred

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypred/rational.hpp"

namespace hypred {

/// Dense univariate polynomial over Q; coefficients()[i] multiplies x^i.
/// The leading coefficient is nonzero unless the polynomial is zero.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coefficients);

  /// c * prod (x - r) over the given roots.
  static RatPoly from_roots(const Rational& c, std::span<const Rational> roots);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& leading() const;
  Rational coefficient(int i) const;

  Rational operator()(const Rational& x) const;

  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const Rational& s, const RatPoly& f);
  friend bool operator==(const RatPoly&, const RatPoly&) = default;

  /// Quotient by (x - r); the remainder is returned separately.
  std::pair<RatPoly, Rational> divide_linear(const Rational& r) const;

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// g(X) = f(a + p^d X). d may be negative.
RatPoly substitute_affine(const RatPoly& f, const Rational& a, long d, OddPrime p);

/// Minimum valuation over the coefficients. Throws ZeroPolynomial for f = 0.
ValInt gauss_valuation(const RatPoly& f, OddPrime p);

struct RootMultiplicity {
  Rational root;
  int multiplicity;
  friend bool operator==(const RootMultiplicity&, const RootMultiplicity&) = default;
};

/// All rational roots with multiplicity, in ascending order.
/// Throws IrrationalBranchPoints unless f is a constant times a product of
/// rational linear factors.
std::vector<RootMultiplicity> rational_roots(const RatPoly& f);

}  // namespace hypred

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypred/rat_poly.hpp"
#include "hypred/rational.hpp"

namespace hypred {

/// Dense polynomial over F_p; coefficients()[i] multiplies X^i, each in [0, p).
class FpPoly {
 public:
  explicit FpPoly(OddPrime p) : p_(p) {}
  /// Coefficients are reduced mod p (negative values allowed).
  FpPoly(OddPrime p, const std::vector<std::int64_t>& coefficients);

  static FpPoly constant(OddPrime p, std::int64_t c);
  /// X - root.
  static FpPoly linear(OddPrime p, std::int64_t root);
  static FpPoly monomial(OddPrime p, std::int64_t c, int degree);

  OddPrime prime() const { return p_; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::int64_t leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  std::int64_t coefficient(int i) const;

  std::int64_t operator()(std::int64_t x) const;

  FpPoly derivative() const;
  FpPoly monic() const;
  FpPoly scaled(std::int64_t s) const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) {
    return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
  }

  /// Euclidean division; throws ZeroPolynomial when dividing by zero.
  std::pair<FpPoly, FpPoly> divmod(const FpPoly& divisor) const;

  /// e.g. "4X^3 + X^2 + 3X".
  std::string to_string(char var = 'X') const;

 private:
  void trim();
  OddPrime p_;
  std::vector<std::int64_t> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
FpPoly gcd(FpPoly a, FpPoly b);
/// base^exponent mod modulus.
FpPoly powmod(const FpPoly& base, std::uint64_t exponent, const FpPoly& modulus);

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t base, std::uint64_t exponent, std::int64_t m);
std::int64_t invmod(std::int64_t a, std::int64_t m);

struct ResidueMultiplicity {
  std::int64_t root;
  int multiplicity;
  friend bool operator==(const ResidueMultiplicity&, const ResidueMultiplicity&) = default;
};

/// Odd-multiplicity analysis of f over F_p.
///
/// When square_certificate holds,
///   f = unit * prod_{r in odd_roots} (X - r) * square_root^2
/// with square_root monic. The certificate fails exactly when some
/// irreducible factor of degree >= 2 occurs with odd multiplicity.
struct OddRootAnalysis {
  std::vector<ResidueMultiplicity> rational_roots;  // ascending, all F_p-roots
  std::vector<std::int64_t> odd_roots;              // ascending
  std::int64_t unit = 0;
  FpPoly square_root;
  bool square_certificate = false;

  FpPoly square_part() const { return square_root * square_root; }
};

/// Squarefree decomposition (Yun) when deg f < p, exhaustive evaluation otherwise.
/// Throws ZeroPolynomial for f = 0.
OddRootAnalysis odd_multiplicity_roots(const FpPoly& f);
/// The exhaustive route alone: evaluate at every residue and divide out.
OddRootAnalysis odd_multiplicity_roots_by_evaluation(const FpPoly& f);

/// All F_p-roots of f, ascending, without multiplicity.
std::vector<std::int64_t> distinct_roots(const FpPoly& f);

/// Monic h with h^2 = f, if f is monic and a perfect square.
std::optional<FpPoly> monic_square_root(const FpPoly& f);

/// Legendre symbol of a unit residue. Throws ZeroResidue when p | u.
int legendre(std::int64_t u, OddPrime p);

/// Coefficientwise reduction of f / p^v mod p. Throws ValuationMismatch
/// unless v equals the Gauss valuation of f.
FpPoly reduce_unit_poly(const RatPoly& f, std::int64_t v, OddPrime p);

}  // namespace hypred

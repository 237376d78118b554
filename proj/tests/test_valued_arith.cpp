// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "hypred/error.hpp"
#include "hypred/fp_poly.hpp"
#include "hypred/rat_poly.hpp"
#include "hypred/rational.hpp"

using namespace hypred;

namespace {

// Valuation by repeated division; independent of mpz_remove.
ValInt naive_val(const Rational& q, std::int64_t p) {
  if (q.is_zero()) return ValInt::infinity();
  std::int64_t v = 0;
  BigInt n = abs(q.num());
  BigInt d = q.den();
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

Rational random_rational(std::mt19937_64& rng, std::int64_t p) {
  std::uniform_int_distribution<long> small(-40, 40);
  std::uniform_int_distribution<long> exp(0, 3);
  Rational num(small(rng));
  Rational den(std::uniform_int_distribution<long>(1, 30)(rng));
  return num / den * pow(Rational(p), exp(rng) - 1);
}

RatPoly random_poly(std::mt19937_64& rng, std::int64_t p, int degree) {
  std::vector<Rational> c;
  for (int i = 0; i <= degree; ++i) c.push_back(random_rational(rng, p));
  if (c.back().is_zero()) c.back() = Rational(1);
  return RatPoly(c);
}

// Root multiplicities over F_p by synthetic division on plain vectors.
std::vector<ResidueMultiplicity> brute_multiplicities(std::vector<std::int64_t> f, std::int64_t p) {
  std::vector<ResidueMultiplicity> out;
  for (std::int64_t r = 0; r < p; ++r) {
    std::vector<std::int64_t> g = f;
    int m = 0;
    for (;;) {
      if (g.size() <= 1) break;
      std::vector<std::int64_t> q(g.size() - 1);
      std::int64_t carry = 0;
      for (std::size_t k = g.size(); k-- > 0;) {
        carry = (carry * r + g[k]) % p;
        if (k > 0) q[k - 1] = carry;
      }
      if (carry != 0) break;
      g = q;
      ++m;
    }
    if (m > 0) out.push_back({r, m});
  }
  return out;
}

}  // namespace

TEST_CASE("rational arithmetic stays canonical") {
  CHECK(Rational::parse("-6/4") == Rational(-3) / Rational(2));
  CHECK_THROWS_AS(Rational::parse("6/-4"), Error);
  CHECK(Rational::parse("-0/7").to_string() == "0");
  CHECK(Rational::parse("12/8").to_string() == "3/2");
  CHECK((Rational(1) / Rational(3) + Rational(1) / Rational(6)).to_string() == "1/2");
  CHECK(pow(Rational(2) / Rational(3), -2).to_string() == "9/4");
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
  CHECK(Rational(-1) < Rational(1) / Rational(3));
}

TEST_CASE("odd primes are validated") {
  CHECK(OddPrime(97).value() == 97);
  try {
    OddPrime bad(2);
    FAIL("2 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResidueCharTwo);
  }
  try {
    OddPrime bad(91);
    FAIL("91 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CompositeModulus);
  }
  CHECK(is_prime(1000000007));
  CHECK_FALSE(is_prime(1));
}

TEST_CASE("val examples") {
  CHECK(val(Rational(50), OddPrime(5)) == ValInt(2));
  CHECK(val(Rational(5) / Rational(9), OddPrime(3)) == ValInt(-2));
  CHECK(val(Rational(0), OddPrime(7)).is_infinite());
  CHECK(ValInt::infinity() > ValInt(1000000));
  CHECK(residue(Rational(-1), OddPrime(5)) == 4);
  CHECK(residue(Rational(1) / Rational(3), OddPrime(5)) == 2);
}

TEST_CASE("val is a valuation on random rationals") {
  std::mt19937_64 rng(11);
  for (std::int64_t p : {3, 5, 7, 11, 97}) {
    const OddPrime pp(p);
    for (int k = 0; k < 400; ++k) {
      const Rational a = random_rational(rng, p);
      const Rational b = random_rational(rng, p);
      CHECK(val(a, pp) == naive_val(a, p));
      if (a.is_zero() || b.is_zero()) continue;
      CHECK(val(a * b, pp) == val(a, pp) + val(b, pp));
      const ValInt sum = val(a + b, pp);
      CHECK(sum >= std::min(val(a, pp), val(b, pp)));
      if (val(a, pp) != val(b, pp)) CHECK(sum == std::min(val(a, pp), val(b, pp)));
    }
  }
}

TEST_CASE("substitute_affine examples") {
  const RatPoly x(std::vector<Rational>{0, 1});
  CHECK(substitute_affine(x, 0, 1, OddPrime(5)) == RatPoly(std::vector<Rational>{0, 5}));
  const RatPoly f = RatPoly::from_roots(1, std::vector<Rational>{0, 5});
  CHECK(substitute_affine(f, 0, 1, OddPrime(5)) == RatPoly(std::vector<Rational>{0, -25, 25}));
  const RatPoly g(std::vector<Rational>{-1, 1});
  CHECK(substitute_affine(g, 1, -1, OddPrime(3)) == RatPoly(std::vector<Rational>{0, Rational(1) / Rational(3)}));
}

TEST_CASE("substitute_affine agrees with evaluation") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const std::int64_t p = std::vector<std::int64_t>{3, 5, 7}[k % 3];
    const RatPoly f = random_poly(rng, p, 1 + k % 6);
    const Rational a = random_rational(rng, p);
    const long d = k % 5 - 2;
    const RatPoly g = substitute_affine(f, a, d, OddPrime(p));
    for (int t = -3; t <= 3; ++t) {
      const Rational X = Rational(t) / Rational(2);
      CHECK(g(X) == f(a + pow(Rational(p), d) * X));
    }
  }
}

TEST_CASE("gauss_valuation examples") {
  CHECK(gauss_valuation(RatPoly(std::vector<Rational>{0, -25, 25}), OddPrime(5)) == ValInt(2));
  CHECK(gauss_valuation(RatPoly(std::vector<Rational>{5, 0, 1}), OddPrime(5)) == ValInt(0));
  CHECK(gauss_valuation(RatPoly(std::vector<Rational>{25, Rational(1) / Rational(5)}), OddPrime(5)) == ValInt(-1));
  CHECK_THROWS_AS(gauss_valuation(RatPoly(), OddPrime(5)), Error);
}

TEST_CASE("gauss valuation of a product on a disc has the closed form") {
  std::mt19937_64 rng(1234);
  for (int k = 0; k < 1000; ++k) {
    const std::int64_t p = std::vector<std::int64_t>{3, 5, 7, 11}[k % 4];
    const OddPrime pp(p);
    std::vector<Rational> roots;
    for (int i = 0; i < 4 + 2 * (k % 3); ++i) roots.push_back(random_rational(rng, p));
    Rational c = random_rational(rng, p);
    if (c.is_zero()) c = Rational(p);
    const Rational a = roots[k % roots.size()] + (k % 2 ? Rational(0) : random_rational(rng, p));
    const long d = k % 7 - 2;
    const RatPoly g = substitute_affine(RatPoly::from_roots(c, roots), a, d, pp);
    ValInt coefficient_min = ValInt::infinity();
    for (const auto& coeff : g.coefficients()) coefficient_min = std::min(coefficient_min, naive_val(coeff, p));
    std::int64_t closed = naive_val(c, p).value();
    for (const auto& xi : roots) {
      const ValInt v = naive_val(a - xi, p);
      closed += v.is_infinite() ? d : std::min<std::int64_t>(v.value(), d);
    }
    CHECK(gauss_valuation(g, pp) == coefficient_min);
    CHECK(coefficient_min == ValInt(closed));
  }
}

TEST_CASE("reduce_unit_poly examples") {
  CHECK(reduce_unit_poly(RatPoly(std::vector<Rational>{0, -25, 25}), 2, OddPrime(5)) ==
        FpPoly(OddPrime(5), {0, 4, 1}));
  CHECK(reduce_unit_poly(RatPoly(std::vector<Rational>{5, 0, 1}), 0, OddPrime(5)) == FpPoly(OddPrime(5), {0, 0, 1}));
  CHECK(reduce_unit_poly(RatPoly(std::vector<Rational>{0, 3}), 1, OddPrime(3)) == FpPoly(OddPrime(3), {0, 1}));
  try {
    reduce_unit_poly(RatPoly(std::vector<Rational>{0, 3}), 0, OddPrime(3));
    FAIL("wrong valuation accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValuationMismatch);
  }
}

TEST_CASE("rational_roots examples") {
  auto roots = rational_roots(RatPoly(std::vector<Rational>{-1, 0, 1}));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].root == Rational(-1));
  CHECK(roots[1].root == Rational(1));
  try {
    rational_roots(RatPoly(std::vector<Rational>{-2, 0, 1}));
    FAIL("sqrt 2 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IrrationalBranchPoints);
  }
  roots = rational_roots(RatPoly(std::vector<Rational>{1, -3, 2}));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].root == Rational(1) / Rational(2));
  CHECK(roots[1].root == Rational(1));
}

TEST_CASE("rational_roots re-expands to the input") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> num(-30, 30);
  std::uniform_int_distribution<long> den(1, 12);
  for (int k = 0; k < 150; ++k) {
    std::vector<Rational> roots;
    for (int i = 0; i < 2 + k % 6; ++i) roots.push_back(Rational(num(rng)) / Rational(den(rng)));
    const Rational c = Rational(num(rng) | 1) / Rational(den(rng));
    const RatPoly f = RatPoly::from_roots(c, roots);
    const auto found = rational_roots(f);
    std::vector<Rational> expanded;
    for (const auto& r : found) {
      for (int m = 0; m < r.multiplicity; ++m) expanded.push_back(r.root);
    }
    CHECK(RatPoly::from_roots(f.leading(), expanded) == f);
    std::sort(roots.begin(), roots.end());
    CHECK(expanded == roots);
  }
}

TEST_CASE("rational_roots handles large prime factors") {
  const Rational big(BigInt("1000000007"));
  const Rational q = Rational(BigInt("998244353")) / Rational(BigInt("1000000009"));
  const RatPoly f = RatPoly::from_roots(7, std::vector<Rational>{big, q, 0, -1});
  const auto found = rational_roots(f);
  REQUIRE(found.size() == 4);
  CHECK(found[3].root == big);
}

TEST_CASE("odd_multiplicity_roots examples") {
  const OddPrime p(5);
  auto a = odd_multiplicity_roots(FpPoly(p, {0, -1, 1}));
  CHECK(a.odd_roots == std::vector<std::int64_t>{0, 1});
  a = odd_multiplicity_roots(FpPoly(p, {0, 8, -12, 4}));
  CHECK(a.odd_roots == std::vector<std::int64_t>{0, 1, 2});
  a = odd_multiplicity_roots(FpPoly(p, {1, -2, 1}));
  CHECK(a.odd_roots.empty());
  CHECK(a.square_certificate);
  CHECK(a.unit == 1);
  CHECK(a.square_part() == FpPoly(p, {1, -2, 1}));
}

TEST_CASE("Yun and evaluation routes agree with brute force") {
  std::mt19937_64 rng(99);
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    const OddPrime pp(p);
    std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
    for (int k = 0; k < 300; ++k) {
      // Build from random linear and quadratic factors with random multiplicities.
      FpPoly f = FpPoly::constant(pp, 1 + coef(rng) % (p - 1));
      const int factors = 1 + k % 4;
      for (int i = 0; i < factors; ++i) {
        FpPoly factor = (k + i) % 3 == 0 ? FpPoly(pp, {coef(rng), coef(rng), 1}) : FpPoly::linear(pp, coef(rng));
        for (int m = 0; m <= (k + i) % 3; ++m) f = f * factor;
      }
      if (f.degree() >= p) continue;
      const auto yun = odd_multiplicity_roots(f);
      const auto direct = odd_multiplicity_roots_by_evaluation(f);
      const auto brute = brute_multiplicities(f.coefficients(), p);
      CHECK(yun.rational_roots == brute);
      CHECK(direct.rational_roots == brute);
      CHECK(yun.odd_roots == direct.odd_roots);
      CHECK(yun.square_certificate == direct.square_certificate);
      int total = 0;
      for (const auto& r : brute) total += r.multiplicity;
      CHECK(total <= f.degree());
      if (yun.square_certificate) {
        FpPoly rebuilt = FpPoly::constant(pp, yun.unit) * yun.square_part();
        for (auto r : yun.odd_roots) rebuilt = rebuilt * FpPoly::linear(pp, r);
        CHECK(rebuilt == f);
      }
    }
  }
}

TEST_CASE("distinct_roots matches exhaustive search") {
  std::mt19937_64 rng(3);
  for (std::int64_t p : {3, 7, 31, 101}) {
    const OddPrime pp(p);
    std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
    for (int k = 0; k < 60; ++k) {
      std::vector<std::int64_t> c(2 + k % 7);
      for (auto& x : c) x = coef(rng);
      c.back() = 1;
      const FpPoly f(pp, c);
      std::vector<std::int64_t> expected;
      for (std::int64_t x = 0; x < p; ++x) {
        if (f(x) == 0) expected.push_back(x);
      }
      CHECK(distinct_roots(f) == expected);
    }
  }
}

TEST_CASE("monic_square_root") {
  const OddPrime p(7);
  const FpPoly h(p, {3, 5, 1});
  const auto root = monic_square_root(h * h);
  REQUIRE(root.has_value());
  CHECK(*root == h);
  CHECK_FALSE(monic_square_root(FpPoly(p, {1, 0, 0, 1})).has_value());
}

TEST_CASE("legendre examples and brute force") {
  CHECK(legendre(4, OddPrime(5)) == 1);
  CHECK(legendre(2, OddPrime(5)) == -1);
  CHECK(legendre(1, OddPrime(7)) == 1);
  CHECK_THROWS_AS(legendre(10, OddPrime(5)), Error);
  for (std::int64_t p : {3, 5, 7, 11, 13, 97}) {
    std::set<std::int64_t> squares;
    for (std::int64_t x = 1; x < p; ++x) squares.insert(x * x % p);
    for (std::int64_t u = 1; u < p; ++u) CHECK(legendre(u, OddPrime(p)) == (squares.count(u) ? 1 : -1));
  }
}

TEST_CASE("FpPoly arithmetic") {
  const OddPrime p(5);
  const FpPoly a(p, {1, 2, 3});
  const FpPoly b(p, {4, 1});
  const auto [q, r] = (a * b + FpPoly::constant(p, 2)).divmod(b);
  CHECK(q == a);
  CHECK(r == FpPoly::constant(p, 2));
  CHECK(gcd(a * b, b * b) == b.monic());
  CHECK(FpPoly(p, {0, 3, 1, 4}).to_string() == "4X^3 + X^2 + 3X");
  CHECK(a.derivative() == FpPoly(p, {2, 6}));
}

// SPDX-License-Identifier: Apache-2.0
#include "hypred/rat_poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hypred/error.hpp"

namespace hypred {

RatPoly::RatPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

void RatPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RatPoly RatPoly::from_roots(const Rational& c, std::span<const Rational> roots) {
  std::vector<Rational> acc{c};
  for (const auto& r : roots) {
    std::vector<Rational> next(acc.size() + 1);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i];
      next[i] -= r * acc[i];
    }
    acc = std::move(next);
  }
  return RatPoly(std::move(acc));
}

const Rational& RatPoly::leading() const {
  if (coeffs_.empty()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Rational RatPoly::coefficient(int i) const {
  if (i < 0 || i > degree()) return Rational();
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational RatPoly::operator()(const Rational& x) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RatPoly(std::move(out));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return RatPoly(std::move(out));
}

RatPoly operator*(const Rational& s, const RatPoly& f) {
  std::vector<Rational> out = f.coeffs_;
  for (auto& c : out) c *= s;
  return RatPoly(std::move(out));
}

std::pair<RatPoly, Rational> RatPoly::divide_linear(const Rational& r) const {
  if (coeffs_.empty()) return {RatPoly(), Rational()};
  // Synthetic division from the top.
  std::vector<Rational> quot(coeffs_.size() - 1);
  Rational carry;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    carry = carry * r + coeffs_[k];
    if (k > 0) quot[k - 1] = carry;
  }
  return {RatPoly(std::move(quot)), carry};
}

std::string RatPoly::to_string(char var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (c.is_zero()) continue;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == Rational(1);
    if (!unit || k == 0) {
      os << (mag.is_integer() || k == 0 ? mag.to_string() : "(" + mag.to_string() + ")");
    }
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

RatPoly substitute_affine(const RatPoly& f, const Rational& a, long d, OddPrime p) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "substitute_affine of zero polynomial");
  // Taylor shift to f(a + X), then scale X^k by p^(d k).
  std::vector<Rational> c = f.coefficients();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = n - 1; k-- > i;) c[k] += a * c[k + 1];
  }
  const Rational step = pow(Rational(static_cast<long>(p.value())), d);
  Rational scale(1);
  for (std::size_t k = 0; k < n; ++k) {
    c[k] *= scale;
    scale *= step;
  }
  return RatPoly(std::move(c));
}

ValInt gauss_valuation(const RatPoly& f, OddPrime p) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "Gauss valuation of the zero polynomial");
  ValInt best = ValInt::infinity();
  for (const auto& c : f.coefficients()) best = std::min(best, val(c, p));
  return best;
}

namespace {

void add_factor(std::map<BigInt, int>& factors, const BigInt& q, int count = 1) {
  factors[q] += count;
}

BigInt pollard_brent(const BigInt& n) {
  if (n % 2 == 0) return BigInt(2);
  for (unsigned long seed = 1;; ++seed) {
    BigInt y(static_cast<unsigned long>(seed + 1));
    const BigInt c(seed);
    BigInt g(1);
    BigInt x;
    BigInt ys;
    BigInt q(1);
    unsigned long r = 1;
    const unsigned long m = 64;
    auto step = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          BigInt diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        BigInt diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(BigInt n, std::map<BigInt, int>& factors) {
  for (unsigned long d = 2; d < 1000 && BigInt(d) * d <= n; ++d) {
    while (n % d == 0) {
      add_factor(factors, BigInt(d));
      n /= d;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    add_factor(factors, n);
    return;
  }
  const BigInt d = pollard_brent(n);
  factor_into(d, factors);
  factor_into(BigInt(n / d), factors);
}

std::vector<BigInt> positive_divisors(const BigInt& n) {
  std::map<BigInt, int> factors;
  factor_into(abs(n), factors);
  std::vector<BigInt> divs{BigInt(1)};
  for (const auto& [q, e] : factors) {
    const std::size_t base = divs.size();
    BigInt power(1);
    for (int k = 1; k <= e; ++k) {
      power *= q;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * power);
    }
  }
  return divs;
}

}  // namespace

std::vector<RootMultiplicity> rational_roots(const RatPoly& f) {
  if (f.is_zero() || f.degree() < 1) {
    throw Error(ErrorCode::InvalidArgument, "rational_roots needs a polynomial of degree >= 1");
  }
  std::vector<RootMultiplicity> out;
  RatPoly rest = f;

  int zero_mult = 0;
  while (rest.degree() >= 1 && rest.coefficient(0).is_zero()) {
    rest = rest.divide_linear(Rational()).first;
    ++zero_mult;
  }
  if (zero_mult > 0) out.push_back({Rational(), zero_mult});

  if (rest.degree() >= 1) {
    // Primitive integer form: clear denominators.
    BigInt lcm_den(1);
    for (const auto& c : rest.coefficients()) {
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.den().get_mpz_t());
    }
    const BigInt constant = (rest.coefficient(0) * Rational(lcm_den)).num();
    const BigInt lead = (rest.leading() * Rational(lcm_den)).num();
    const auto numer_divs = positive_divisors(constant);
    const auto denom_divs = positive_divisors(lead);

    std::vector<Rational> candidates;
    for (const auto& u : numer_divs) {
      for (const auto& w : denom_divs) {
        candidates.emplace_back(u, w);
        candidates.emplace_back(BigInt(-u), w);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const auto& r : candidates) {
      if (rest.degree() < 1) break;
      int mult = 0;
      for (;;) {
        auto [q, rem] = rest.divide_linear(r);
        if (!rem.is_zero()) break;
        rest = std::move(q);
        ++mult;
        if (rest.degree() < 1) break;
      }
      if (mult > 0) out.push_back({r, mult});
    }
  }

  if (rest.degree() >= 1) {
    throw Error(ErrorCode::IrrationalBranchPoints,
                "polynomial " + f.to_string() +
                    " does not split into rational linear factors; supply the branch points "
                    "explicitly (roots form) over a field where they are rational");
  }
  std::sort(out.begin(), out.end(),
            [](const RootMultiplicity& a, const RootMultiplicity& b) { return a.root < b.root; });

  // Re-expansion must reproduce f exactly.
  std::vector<Rational> expanded;
  for (const auto& rm : out) {
    for (int k = 0; k < rm.multiplicity; ++k) expanded.push_back(rm.root);
  }
  if (RatPoly::from_roots(f.leading(), expanded) != f) {
    throw Error(ErrorCode::InvariantViolation, "root re-expansion mismatch for " + f.to_string());
  }
  return out;
}

}  // namespace hypred

// SPDX-License-Identifier: Apache-2.0
#include "hypred/fp_poly.hpp"

#include <algorithm>
#include <sstream>

#include "hypred/error.hpp"

namespace hypred {

__extension__ using Wide = __int128;

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<Wide>(a) * b % m);
}

std::int64_t powmod(std::int64_t base, std::uint64_t exponent, std::int64_t m) {
  std::int64_t result = 1 % m;
  base %= m;
  if (base < 0) base += m;
  while (exponent > 0) {
    if (exponent & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exponent >>= 1U;
  }
  return result;
}

std::int64_t invmod(std::int64_t a, std::int64_t m) {
  a %= m;
  if (a < 0) a += m;
  if (a == 0) throw Error(ErrorCode::ZeroResidue, "0 has no inverse mod " + std::to_string(m));
  return powmod(a, static_cast<std::uint64_t>(m - 2), m);
}

namespace {

std::int64_t reduce(std::int64_t x, std::int64_t p) {
  x %= p;
  return x < 0 ? x + p : x;
}

}  // namespace

FpPoly::FpPoly(OddPrime p, const std::vector<std::int64_t>& coefficients) : p_(p) {
  coeffs_.reserve(coefficients.size());
  for (auto c : coefficients) coeffs_.push_back(reduce(c, p_.value()));
  trim();
}

void FpPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FpPoly FpPoly::constant(OddPrime p, std::int64_t c) { return FpPoly(p, {c}); }

FpPoly FpPoly::linear(OddPrime p, std::int64_t root) { return FpPoly(p, {-root, 1}); }

FpPoly FpPoly::monomial(OddPrime p, std::int64_t c, int degree) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return FpPoly(p, v);
}

std::int64_t FpPoly::coefficient(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

std::int64_t FpPoly::operator()(std::int64_t x) const {
  const auto p = p_.value();
  x = reduce(x, p);
  std::int64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (mulmod(acc, x, p) + *it) % p;
  return acc;
}

FpPoly FpPoly::derivative() const {
  FpPoly d(p_);
  const auto p = p_.value();
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d.coeffs_.push_back(mulmod(coeffs_[i], static_cast<std::int64_t>(i) % p, p));
  }
  d.trim();
  return d;
}

FpPoly FpPoly::scaled(std::int64_t s) const {
  FpPoly out(p_);
  const auto p = p_.value();
  s = reduce(s, p);
  for (auto c : coeffs_) out.coeffs_.push_back(mulmod(c, s, p));
  out.trim();
  return out;
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(invmod(leading(), p_.value()));
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  FpPoly out(a.p_);
  const auto p = a.p_.value();
  out.coeffs_.assign(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) {
    out.coeffs_[i] = (a.coefficient(static_cast<int>(i)) + b.coefficient(static_cast<int>(i))) % p;
  }
  out.trim();
  return out;
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) { return a + b.scaled(-1); }

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  FpPoly out(a.p_);
  if (a.is_zero() || b.is_zero()) return out;
  const auto p = a.p_.value();
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out.coeffs_[i + j] = (out.coeffs_[i + j] + mulmod(a.coeffs_[i], b.coeffs_[j], p)) % p;
    }
  }
  out.trim();
  return out;
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  const auto p = p_.value();
  FpPoly rem = *this;
  FpPoly quot(p_);
  if (rem.degree() < divisor.degree()) return {quot, rem};
  quot.coeffs_.assign(static_cast<std::size_t>(rem.degree() - divisor.degree()) + 1, 0);
  const std::int64_t inv_lead = invmod(divisor.leading(), p);
  while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
    const int shift = rem.degree() - divisor.degree();
    const std::int64_t factor = mulmod(rem.leading(), inv_lead, p);
    quot.coeffs_[static_cast<std::size_t>(shift)] = factor;
    for (std::size_t j = 0; j < divisor.coeffs_.size(); ++j) {
      auto& slot = rem.coeffs_[j + static_cast<std::size_t>(shift)];
      slot = reduce(slot - mulmod(factor, divisor.coeffs_[j], p), p);
    }
    rem.trim();
  }
  quot.trim();
  return {quot, rem};
}

std::string FpPoly::to_string(char var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (coeffs_[k] != 1 || k == 0) os << coeffs_[k];
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly powmod(const FpPoly& base, std::uint64_t exponent, const FpPoly& modulus) {
  const OddPrime p = base.prime();
  FpPoly result = FpPoly::constant(p, 1).divmod(modulus).second;
  FpPoly b = base.divmod(modulus).second;
  while (exponent > 0) {
    if (exponent & 1U) result = (result * b).divmod(modulus).second;
    b = (b * b).divmod(modulus).second;
    exponent >>= 1U;
  }
  return result;
}

namespace {

// Roots of a monic polynomial that is a product of distinct linear factors.
void split_linear_product(const FpPoly& g, std::vector<std::int64_t>& out) {
  const OddPrime p = g.prime();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back((p.value() - g.coefficient(0)) % p.value());
    return;
  }
  const auto half = static_cast<std::uint64_t>((p.value() - 1) / 2);
  for (std::int64_t shift = 0; shift < p.value(); ++shift) {
    const FpPoly t(p, {shift, 1});
    const FpPoly h = powmod(t, half, g) - FpPoly::constant(p, 1);
    const FpPoly w = gcd(h, g);
    if (w.degree() > 0 && w.degree() < g.degree()) {
      split_linear_product(w, out);
      split_linear_product(g.divmod(w).first, out);
      return;
    }
  }
  throw Error(ErrorCode::InvariantViolation, "equal-degree splitting failed for " + g.to_string());
}

FpPoly pow(const FpPoly& f, int e) {
  FpPoly r = FpPoly::constant(f.prime(), 1);
  for (int i = 0; i < e; ++i) r = r * f;
  return r;
}

}  // namespace

std::vector<std::int64_t> distinct_roots(const FpPoly& f) {
  std::vector<std::int64_t> roots;
  if (f.degree() < 1) return roots;
  const OddPrime p = f.prime();
  const FpPoly m = f.monic();
  const FpPoly x = FpPoly::monomial(p, 1, 1);
  const FpPoly frob = powmod(x, static_cast<std::uint64_t>(p.value()), m) - x;
  split_linear_product(gcd(m, frob), roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::optional<FpPoly> monic_square_root(const FpPoly& f) {
  const OddPrime p = f.prime();
  const auto pv = p.value();
  if (f.is_zero() || f.leading() != 1 || f.degree() % 2 != 0) return std::nullopt;
  const int m = f.degree() / 2;
  std::vector<std::int64_t> h(static_cast<std::size_t>(m) + 1, 0);
  h[static_cast<std::size_t>(m)] = 1;
  const std::int64_t inv2 = invmod(2, pv);
  // Match the coefficients of X^(2m-k) for k = 1..m, top-down.
  for (int k = 1; k <= m; ++k) {
    std::int64_t acc = f.coefficient(2 * m - k);
    for (int i = m - k + 1; i <= m; ++i) {
      const int j = 2 * m - k - i;
      if (j > m - k && j <= m) {
        acc = reduce(acc - mulmod(h[static_cast<std::size_t>(i)], h[static_cast<std::size_t>(j)], pv), pv);
      }
    }
    h[static_cast<std::size_t>(m - k)] = mulmod(acc, inv2, pv);
  }
  FpPoly root(p, h);
  if (root * root == f) return root;
  return std::nullopt;
}

namespace {

void finish_odd_roots(OddRootAnalysis& out) {
  std::sort(out.rational_roots.begin(), out.rational_roots.end(),
            [](const auto& a, const auto& b) { return a.root < b.root; });
  out.odd_roots.clear();
  for (const auto& rm : out.rational_roots) {
    if (rm.multiplicity % 2 == 1) out.odd_roots.push_back(rm.root);
  }
}

}  // namespace

OddRootAnalysis odd_multiplicity_roots_by_evaluation(const FpPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "odd_multiplicity_roots of zero");
  const OddPrime p = f.prime();
  OddRootAnalysis out{.rational_roots = {}, .odd_roots = {}, .unit = 0, .square_root = FpPoly(p)};
  out.unit = f.leading();
  FpPoly rest = f.monic();
  FpPoly half = FpPoly::constant(p, 1);
  for (std::int64_t x = 0; x < p.value() && rest.degree() >= 1; ++x) {
    int mult = 0;
    const FpPoly lin = FpPoly::linear(p, x);
    while (rest.degree() >= 1 && rest(x) == 0) {
      rest = rest.divmod(lin).first;
      ++mult;
    }
    if (mult > 0) {
      out.rational_roots.push_back({x, mult});
      half = half * pow(lin, mult / 2);
    }
  }
  finish_odd_roots(out);
  if (auto s = monic_square_root(rest)) {
    out.square_certificate = true;
    out.square_root = half * *s;
  } else {
    out.square_certificate = false;
    out.square_root = half;
  }
  return out;
}

OddRootAnalysis odd_multiplicity_roots(const FpPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "odd_multiplicity_roots of zero");
  const OddPrime p = f.prime();
  if (f.degree() >= p.value()) return odd_multiplicity_roots_by_evaluation(f);

  OddRootAnalysis out{.rational_roots = {}, .odd_roots = {}, .unit = 0, .square_root = FpPoly::constant(p, 1)};
  out.unit = f.leading();
  out.square_certificate = true;
  const FpPoly monic = f.monic();
  if (monic.degree() == 0) return out;

  // Yun: monic = prod a_i^i with a_i squarefree and pairwise coprime.
  const FpPoly df = monic.derivative();
  const FpPoly a0 = gcd(monic, df);
  FpPoly b = monic.divmod(a0).first;
  FpPoly c = df.divmod(a0).first;
  FpPoly d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    const FpPoly a = gcd(b, d);
    b = b.divmod(a).first;
    c = d.divmod(a).first;
    d = c - b.derivative();
    if (a.degree() < 1) continue;
    const auto roots = distinct_roots(a);
    for (auto r : roots) out.rational_roots.push_back({r, i});
    if (i % 2 == 1 && static_cast<int>(roots.size()) != a.degree()) out.square_certificate = false;
    out.square_root = out.square_root * pow(a, i / 2);
  }
  finish_odd_roots(out);
  return out;
}

int legendre(std::int64_t u, OddPrime p) {
  const auto pv = p.value();
  const std::int64_t r = reduce(u, pv);
  if (r == 0) throw Error(ErrorCode::ZeroResidue, std::to_string(u) + " is divisible by " + std::to_string(pv));
  return powmod(r, static_cast<std::uint64_t>((pv - 1) / 2), pv) == 1 ? 1 : -1;
}

FpPoly reduce_unit_poly(const RatPoly& f, std::int64_t v, OddPrime p) {
  const Rational scale = pow(Rational(static_cast<long>(p.value())), -v);
  std::vector<std::int64_t> coeffs;
  coeffs.reserve(f.coefficients().size());
  for (const auto& c : f.coefficients()) {
    const Rational q = c * scale;
    if (val(q, p) < ValInt(0)) {
      throw Error(ErrorCode::ValuationMismatch,
                  "coefficient " + c.to_string() + " has valuation below " + std::to_string(v));
    }
    coeffs.push_back(q.is_zero() ? 0 : residue(q, p));
  }
  FpPoly out(p, coeffs);
  if (out.is_zero()) {
    throw Error(ErrorCode::ValuationMismatch,
                "no coefficient of " + f.to_string() + " has valuation exactly " + std::to_string(v));
  }
  return out;
}

}  // namespace hypred

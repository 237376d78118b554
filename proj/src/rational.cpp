// SPDX-License-Identifier: Apache-2.0
#include "hypred/rational.hpp"

#include <ostream>

#include "hypred/error.hpp"

namespace hypred {

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  canonicalize();
}

void Rational::canonicalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  if (i == text.size()) return false;
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto bad = [&] {
    return Error(ErrorCode::InvalidArgument,
                 "not a rational number: '" + std::string(text) + "'");
  };
  BigInt num;
  BigInt den(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) throw bad();
  } else {
    auto den_text = text.substr(slash + 1);
    if (!parse_integer(text.substr(0, slash), num)) throw bad();
    if (den_text.empty() || den_text[0] == '+' || den_text[0] == '-') throw bad();
    if (!parse_integer(den_text, den)) throw bad();
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(std::move(num), std::move(den));
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  canonicalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  canonicalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  canonicalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return pow(Rational(1) / base, -exponent);
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(std::move(num), std::move(den));
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  BigInt z(static_cast<long>(n));
  // BPSW; no known counterexamples below 2^64.
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

OddPrime::OddPrime(std::int64_t value) : value_(value) {
  if (value == 2) {
    throw Error(ErrorCode::ResidueCharTwo, "p = 2 is not supported (residue characteristic 2)");
  }
  if (!is_prime(value)) {
    throw Error(ErrorCode::CompositeModulus, std::to_string(value) + " is not an odd prime");
  }
  if (value >= (std::int64_t{1} << 62)) {
    throw Error(ErrorCode::InvalidArgument, "prime too large");
  }
}

std::int64_t ValInt::value() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "infinite valuation has no finite value");
  return *value_;
}

std::string ValInt::to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

ValInt val(const BigInt& n, OddPrime p) {
  if (n == 0) return ValInt::infinity();
  BigInt rest;
  BigInt prime(static_cast<long>(p.value()));
  const auto k = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t());
  return static_cast<std::int64_t>(k);
}

ValInt val(const Rational& q, OddPrime p) {
  if (q.is_zero()) return ValInt::infinity();
  return val(q.num(), p).value() - val(q.den(), p).value();
}

std::int64_t residue(const Rational& q, OddPrime p) {
  const BigInt prime(static_cast<long>(p.value()));
  if (q.den() % prime == 0) {
    throw Error(ErrorCode::InvalidArgument, "residue of non-integral " + q.to_string());
  }
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), q.den().get_mpz_t(), prime.get_mpz_t());
  BigInt r = (q.num() * inv) % prime;
  if (r < 0) r += prime;
  return r.get_si();
}

}  // namespace hypred

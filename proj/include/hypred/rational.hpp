// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace hypred {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long value) : num_(value), den_(1) {}  // NOLINT: implicit by intent
  explicit Rational(BigInt value) : num_(std::move(value)), den_(1) {}
  Rational(BigInt numerator, BigInt denominator);

  /// Parses "a" or "a/b" with optional sign. Throws Error(InvalidArgument).
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return sgn(num_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "a" for integers, "a/b" otherwise.
  std::string to_string() const;

 private:
  void canonicalize();

  BigInt num_;
  BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// Integer power of a rational; negative exponents invert.
Rational pow(const Rational& base, long exponent);

/// An odd prime; construction validates primality.
class OddPrime {
 public:
  /// Throws ResidueCharTwo for 2, CompositeModulus for composites and values < 2.
  explicit OddPrime(std::int64_t value);

  std::int64_t value() const { return value_; }
  operator std::int64_t() const { return value_; }  // NOLINT

  friend bool operator==(OddPrime, OddPrime) = default;

 private:
  std::int64_t value_;
};

bool is_prime(std::int64_t n);

/// A valuation: an integer or +infinity (only for zero).
class ValInt {
 public:
  constexpr ValInt(std::int64_t v) : value_(v) {}  // NOLINT: implicit by intent
  static constexpr ValInt infinity() { return ValInt(); }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  /// Precondition: finite.
  std::int64_t value() const;

  friend constexpr bool operator==(const ValInt&, const ValInt&) = default;
  friend constexpr std::strong_ordering operator<=>(const ValInt& a, const ValInt& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    return *a.value_ <=> *b.value_;
  }
  friend ValInt operator+(const ValInt& a, const ValInt& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return *a.value_ + *b.value_;
  }

  std::string to_string() const;

 private:
  constexpr ValInt() = default;
  std::optional<std::int64_t> value_;
};

/// Exponent of p in q; infinity iff q = 0.
ValInt val(const Rational& q, OddPrime p);
/// Exponent of p in a nonzero integer; infinity for 0.
ValInt val(const BigInt& n, OddPrime p);

/// Residue of a p-integral rational in [0, p). Precondition: val(q) >= 0.
std::int64_t residue(const Rational& q, OddPrime p);

}  // namespace hypred

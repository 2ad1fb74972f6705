#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "bevholt/errors.hpp"

namespace bevholt {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational number in canonical form (coprime
/// numerator/denominator, denominator > 0). Arithmetic is closed and never
/// rounds; division by zero throws DomainError instead of producing an
/// infinity.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(BigInt numerator, BigInt denominator) {
    if (denominator == 0) throw DomainError("rational with zero denominator");
    if (denominator < 0) {
      numerator = -numerator;
      denominator = -denominator;
    }
    v_ = Rep(std::move(numerator), std::move(denominator));
  }

  /// Exact value of an IEEE double (every finite double is a dyadic
  /// rational). NaN/infinity are rejected.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("cannot convert non-finite value to rational");
    Rational r;
    r.v_ = Rep(x);
    return r;
  }

  /// Parses "p", "p/q" or a decimal literal such as "0.25" (exact).
  static Rational parse(std::string_view text);

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return denominator() == 1; }

  Rational operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
  }
  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { return *this < Rational(0) ? -*this : *this; }

  Rational reciprocal() const {
    if (is_zero()) throw DomainError("reciprocal of zero");
    return Rational(denominator(), numerator());
  }

  double to_double() const { return v_.convert_to<double>(); }

  /// Canonical text: "p" for integers, "p/q" otherwise.
  std::string str() const {
    std::string s = numerator().str();
    if (!is_integer()) {
      s += '/';
      s += denominator().str();
    }
    return s;
  }

 private:
  using Rep = boost::multiprecision::cpp_rational;
  Rep v_;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ConfigError("invalid rational literal '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  auto digits = [&](std::string& out) {
    std::size_t start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') out += text[i++];
    return i > start;
  };
  std::string ip;
  if (!digits(ip)) return fail();
  BigInt num(ip);
  BigInt den(1);
  if (i < text.size() && text[i] == '/') {
    ++i;
    std::string q;
    if (!digits(q)) return fail();
    den = BigInt(q);
    if (den == 0) return fail();
  } else if (i < text.size() && text[i] == '.') {
    ++i;
    std::string fp;
    if (!digits(fp)) return fail();
    for (char c : fp) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
  }
  if (i != text.size()) return fail();
  if (neg) num = -num;
  return Rational(std::move(num), std::move(den));
}

}  // namespace bevholt

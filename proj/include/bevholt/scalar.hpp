#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "bevholt/rational.hpp"

namespace bevholt {

using Complex = std::complex<double>;
using Index = std::size_t;

/// Numeric backend of a run. Values of different backends are never mixed
/// within one trajectory.
enum class Backend { rational, real, cplx };

inline const char* to_string(Backend b) {
  switch (b) {
    case Backend::rational: return "rational";
    case Backend::real: return "float";
    case Backend::cplx: return "complex";
  }
  return "?";
}

/// Shortest decimal that round-trips to the same double.
inline std::string render_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr Backend backend = Backend::rational;
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long long v) { return Rational(v); }
  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static double abs_approx(const Rational& x) { return std::fabs(x.to_double()); }
  static std::string render(const Rational& x) { return x.str(); }
};

template <>
struct scalar_traits<double> {
  static constexpr Backend backend = Backend::real;
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double from_rational(const Rational& r) { return r.to_double(); }
  static bool is_zero(double x) { return x == 0.0; }
  static double abs_approx(double x) { return std::fabs(x); }
  static std::string render(double x) { return render_double(x); }
};

template <>
struct scalar_traits<Complex> {
  static constexpr Backend backend = Backend::cplx;
  static constexpr bool exact = false;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_int(long long v) { return {static_cast<double>(v), 0.0}; }
  static Complex from_rational(const Rational& r) { return {r.to_double(), 0.0}; }
  static bool is_zero(const Complex& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static double abs_approx(const Complex& x) { return std::abs(x); }
  static std::string render(const Complex& x) {
    std::string s = render_double(x.real());
    s += std::signbit(x.imag()) ? '-' : '+';
    s += render_double(std::fabs(x.imag()));
    s += 'i';
    return s;
  }
};

template <class T>
bool is_zero(const T& x) {
  return scalar_traits<T>::is_zero(x);
}

/// |a - b| with a unit floor on the scale: |a-b| / max(1, |a|, |b|).
/// Zero exactly when a == b in exact backends.
template <class T>
double rel_diff(const T& a, const T& b) {
  double d = scalar_traits<T>::abs_approx(a - b);
  double scale = std::max({1.0, scalar_traits<T>::abs_approx(a), scalar_traits<T>::abs_approx(b)});
  return d / scale;
}

template <class T>
T pow_uint(T base, unsigned long long e) {
  T acc = scalar_traits<T>::one();
  while (e != 0) {
    if (e & 1ULL) acc = acc * base;
    base = base * base;
    e >>= 1ULL;
  }
  return acc;
}

}  // namespace bevholt

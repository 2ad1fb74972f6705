#include <doctest.h>

#include "bevholt/rational.hpp"
#include "bevholt/scalar.hpp"

using namespace bevholt;

TEST_CASE("rational canonical form") {
  CHECK(Rational(BigInt(2), BigInt(4)) == Rational(BigInt(1), BigInt(2)));
  CHECK(Rational(BigInt(-2), BigInt(-4)) == Rational(BigInt(1), BigInt(2)));
  CHECK(Rational(BigInt(2), BigInt(-4)).numerator() == BigInt(-1));
  CHECK(Rational(BigInt(2), BigInt(-4)).denominator() == BigInt(2));
  CHECK(Rational(0).is_zero());
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), DomainError);
}

TEST_CASE("rational arithmetic is exact") {
  Rational a{BigInt(1), BigInt(3)};
  Rational b{BigInt(1), BigInt(6)};
  CHECK(a + b == Rational(BigInt(1), BigInt(2)));
  CHECK(a - b == b);
  CHECK(a * b == Rational(BigInt(1), BigInt(18)));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(BigInt(-1), BigInt(3)));
  CHECK_THROWS_AS(a / Rational(0), DomainError);
  CHECK_THROWS_AS(Rational(0).reciprocal(), DomainError);

  // (1/3 + 1/6) * 6 == 3, no rounding anywhere
  CHECK((a + b) * Rational(6) == Rational(3));
}

TEST_CASE("rational ordering and abs") {
  CHECK(Rational(BigInt(-3), BigInt(2)) < Rational(1));
  CHECK(Rational(BigInt(3), BigInt(2)) > Rational(1));
  CHECK(Rational(BigInt(-3), BigInt(2)).abs() == Rational(BigInt(3), BigInt(2)));
}

TEST_CASE("rational from_double is the exact binary value") {
  CHECK(Rational::from_double(0.375) == Rational(BigInt(3), BigInt(8)));
  CHECK(Rational::from_double(-1.5) == Rational(BigInt(-3), BigInt(2)));
  CHECK(Rational::from_double(0.25) == Rational(BigInt(1), BigInt(4)));
  // 0.1 is not 1/10 in binary; the conversion must preserve the double bit
  // pattern, not the decimal reading
  Rational tenth = Rational::from_double(0.1);
  CHECK(tenth != Rational(BigInt(1), BigInt(10)));
  CHECK(tenth.to_double() == 0.1);
  CHECK_THROWS_AS(Rational::from_double(1.0 / 0.0), DomainError);
}

TEST_CASE("rational parse and render round trip") {
  CHECK(Rational::parse("5").str() == "5");
  CHECK(Rational::parse("-3/6").str() == "-1/2");
  CHECK(Rational::parse("0.25") == Rational(BigInt(1), BigInt(4)));
  CHECK(Rational::parse("2.50") == Rational(BigInt(5), BigInt(2)));
  CHECK_THROWS_AS(Rational::parse("1/0"), ConfigError);
  CHECK_THROWS_AS(Rational::parse("abc"), ConfigError);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), ConfigError);
  CHECK(Rational::parse(Rational(BigInt(-7), BigInt(3)).str()) == Rational(BigInt(-7), BigInt(3)));
}

TEST_CASE("pow_uint") {
  CHECK(pow_uint(Rational(BigInt(1), BigInt(2)), 10) == Rational(BigInt(1), BigInt(1024)));
  CHECK(pow_uint(Rational(-2), 3) == Rational(-8));
  CHECK(pow_uint(Rational(7), 0) == Rational(1));
  CHECK(pow_uint(2.0, 10) == 1024.0);
}

TEST_CASE("scalar rendering") {
  CHECK(scalar_traits<Rational>::render(Rational(BigInt(-1), BigInt(2))) == "-1/2");
  CHECK(scalar_traits<double>::render(0.1) == "0.1");
  CHECK(scalar_traits<double>::render(0.375) == "0.375");
  CHECK(scalar_traits<Complex>::render(Complex(1.5, -0.5)) == "1.5-0.5i");
  CHECK(scalar_traits<Complex>::render(Complex(0.0, 1.0)) == "0+1i");
}

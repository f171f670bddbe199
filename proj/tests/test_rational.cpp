#include <doctest.h>

#include "tmdyn/rational.hpp"

using tmdyn::Rational;

TEST_CASE("rationals normalize and order exactly") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(-1, 2).den() == 2);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(17, 32) > Rational(1, 2));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(Rational(2).inverse() == Rational(1, 2));
  CHECK(Rational(5, 2).str() == "5/2");
  CHECK(Rational(0).str() == "0/1");
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-6/8") == Rational(-3, 4));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("x"));
}

TEST_CASE("rational errors") {
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(Rational(0).inverse()), std::domain_error);
  const Rational big(std::numeric_limits<std::int64_t>::max() / 2, 1);
  CHECK_THROWS_AS(big * big, std::overflow_error);
}

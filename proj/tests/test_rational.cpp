#include <catch2/catch_amalgamated.hpp>

#include "chernlab/rational.hpp"

using namespace chernlab;

TEST_CASE("Q(i) arithmetic is exact") {
  QI a(Rational(1, 2), Rational(1, 3));
  QI b(Rational(-1, 2), Rational(2, 3));

  REQUIRE(a + b == QI(Rational(0), Rational(1)));
  REQUIRE(a - a == QI(0));
  REQUIRE((a * b) == QI(Rational(-1, 2) * Rational(1, 2) - Rational(1, 3) * Rational(2, 3),
                        Rational(1, 2) * Rational(2, 3) + Rational(1, 3) * Rational(-1, 2)));

  SECTION("i^2 = -1") { REQUIRE(QI::unit_i() * QI::unit_i() == QI(-1)); }

  SECTION("division inverts multiplication") {
    QI q = a / b;
    REQUIRE(q * b == a);
    REQUIRE_THROWS_AS(a / QI(0), std::domain_error);
  }
}

TEST_CASE("Q(i) serialization round-trips") {
  for (const QI& v :
       {QI(0), QI(3), QI(Rational(-1, 2)), QI(Rational(0), Rational(2, 7)),
        QI(Rational(1, 2), Rational(-3, 4)), QI(Rational(-5), Rational(1))}) {
    REQUIRE(parse_qi(to_string(v)) == v);
  }

  SECTION("canonical forms") {
    REQUIRE(to_string(QI(Rational(1, 2), Rational(-3, 4))) == "1/2-3/4*i");
    REQUIRE(to_string(QI(Rational(1, 2))) == "1/2");
    REQUIRE(to_string(QI(Rational(0), Rational(1))) == "1*i");
    REQUIRE(to_string(QI(0)) == "0");
  }

  SECTION("parser accepts loose forms") {
    REQUIRE(parse_qi("i") == QI::unit_i());
    REQUIRE(parse_qi("-i") == QI(Rational(0), Rational(-1)));
    REQUIRE(parse_qi("3i") == QI(Rational(0), Rational(3)));
    REQUIRE(parse_qi(" 1/2 + 3/4*i ") == QI(Rational(1, 2), Rational(3, 4)));
    REQUIRE_THROWS_AS(parse_qi("2/0"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_qi("abc"), std::invalid_argument);
  }
}

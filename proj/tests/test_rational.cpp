#include "dclab/rational.hpp"

#include <stdexcept>

#include "../vendor/doctest.h"

using namespace dclab;

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK(parse_rational("1.0") == Rational(1));
  CHECK(parse_rational(" 2/6 ") == Rational(1, 3));
}

TEST_CASE("parse_rational rejects junk") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1."), std::invalid_argument);
}

TEST_CASE("rat_str round-trips and reduces") {
  CHECK(rat_str(Rational(40, 52)) == "10/13");
  CHECK(rat_str(Rational(4)) == "4");
  CHECK(rat_str(Rational(-1, 3)) == "-1/3");
  CHECK(parse_rational(rat_str(Rational(29524, 39364))) == Rational(29524, 39364));
}

TEST_CASE("pow_int and ceil_log3") {
  CHECK(pow_int(3, 0) == 1);
  CHECK(pow_int(3, 12) == 531441);
  CHECK(pow_int(2, 64) == Int("18446744073709551616"));
  CHECK(ceil_log3(1) == 0);
  CHECK(ceil_log3(3) == 1);
  CHECK(ceil_log3(4) == 2);
  CHECK(ceil_log3(81) == 4);
  CHECK(ceil_log3(82) == 5);
}

TEST_CASE("delta_exponent brackets powers of two") {
  CHECK(delta_exponent(Rational(1)) == 0);
  CHECK(delta_exponent(Rational(1, 2)) == 1);
  CHECK(delta_exponent(Rational(1, 3)) == 1);
  CHECK(delta_exponent(Rational(1, 4)) == 2);
  CHECK(delta_exponent(Rational(1, 256)) == 8);
  CHECK(delta_exponent(Rational(3, 8)) == 1);
}

TEST_CASE("rat_double approximates") {
  CHECK(rat_double(Rational(1, 4)) == doctest::Approx(0.25));
  CHECK(rat_double(Rational(-3, 2)) == doctest::Approx(-1.5));
}

#include "robsel/rational.h"

#include <doctest.h>

#include "robsel/error.h"

using namespace robsel;

TEST_CASE("rat canonicalizes to lowest terms") {
  CHECK(to_string(rat(3, 6)) == "1/2");
  CHECK(to_string(rat(-4, 8)) == "-1/2");
  CHECK(to_string(rat(4, 2)) == "2");
  CHECK(to_string(rat(0, 7)) == "0");
  CHECK(rat(2, -4) == rat(-1, 2));
  CHECK_THROWS_AS(rat(1, 0), Error);
}

TEST_CASE("parse_rational accepts integers and fractions") {
  CHECK(parse_rational("8412") == rat(8412));
  CHECK(parse_rational("-7/3") == rat(-7, 3));
  CHECK(parse_rational("21/5") == rat(21, 5));
  CHECK(parse_rational("10/4") == rat(5, 2));
}

TEST_CASE("parse_rational rejects inexact and malformed literals") {
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("+3"), ParseError);
  CHECK_THROWS_AS(parse_rational("3/"), ParseError);
  CHECK_THROWS_AS(parse_rational("/3"), ParseError);
  CHECK_THROWS_AS(parse_rational(" 3"), ParseError);
  CHECK_THROWS_AS(parse_rational("3/-2"), ParseError);
}

TEST_CASE("to_decimal_string rounds half-up on the absolute value") {
  CHECK(to_decimal_string(rat(49, 3), 1) == "16.3");
  CHECK(to_decimal_string(rat(49, 3), 2) == "16.33");
  CHECK(to_decimal_string(rat(8412), 2) == "8412.00");
  CHECK(to_decimal_string(rat(866797, 100), 2) == "8667.97");
  CHECK(to_decimal_string(rat(1, 2), 0) == "1");
  CHECK(to_decimal_string(rat(-1, 2), 0) == "-1");
  CHECK(to_decimal_string(rat(5, 2), 0) == "3");
  CHECK(to_decimal_string(rat(1, 8), 2) == "0.13");
}

TEST_CASE("to_decimal_string never renders -0") {
  CHECK(to_decimal_string(rat(-1, 1000), 2) == "0.00");
  CHECK(to_decimal_string(rat(0), 2) == "0.00");
}

TEST_CASE("floor and integrality") {
  CHECK(floor(rat(7, 2)) == rat(3));
  CHECK(floor(rat(-7, 2)) == rat(-4));
  CHECK(floor(rat(4)) == rat(4));
  CHECK(is_integer(rat(4)));
  CHECK_FALSE(is_integer(rat(4, 3)));
  CHECK(to_long(rat(8412)) == 8412);
  CHECK(to_long(rat(-3)) == -3);
  CHECK_THROWS_AS(to_long(rat(1, 2)), Error);
}

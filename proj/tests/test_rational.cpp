#include <doctest.h>

#include "adjointkit/rational.hpp"

using namespace adjointkit;

TEST_CASE("construction normalizes to lowest terms with positive denominator") {
  CHECK(Rat(2, 4).str() == "1/2");
  CHECK(Rat(-2, 4).str() == "-1/2");
  CHECK(Rat(2, -4).str() == "-1/2");
  CHECK(Rat(-2, -4).str() == "1/2");
  CHECK(Rat(0, 7).str() == "0");
  CHECK(Rat().str() == "0");
  CHECK(Rat(5).str() == "5");
  CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
}

TEST_CASE("parse accepts p and p/q forms and rejects everything else") {
  CHECK(Rat::parse("3") == Rat(3));
  CHECK(Rat::parse("-7/2") == Rat(-7, 2));
  CHECK(Rat::parse("+4/6") == Rat(2, 3));
  CHECK(Rat::parse("4/-6") == Rat(-2, 3));
  CHECK(Rat::parse("0") == Rat());
  CHECK_THROWS_AS(Rat::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("a"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("--3"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1 / 2"), std::invalid_argument);
}

TEST_CASE("str round-trips through parse") {
  const char* cases[] = {"0", "5", "-5", "1/2", "-22/7", "1000000000000/7"};
  for (const char* s : cases) CHECK(Rat::parse(s).str() == s);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rat(1, 6) + Rat(1, 3) == Rat(1, 2));
  CHECK(Rat(1, 2) - Rat(2, 3) == Rat(-1, 6));
  CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
  CHECK(Rat(1, 3) / Rat(2, 9) == Rat(3, 2));
  CHECK(-Rat(1, 2) == Rat(-1, 2));
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
  // No drift over many small steps.
  Rat s;
  for (int i = 1; i <= 50; ++i) s += Rat(1, i) - Rat(1, i + 1);
  CHECK(s == Rat(1) - Rat(1, 51));
}

TEST_CASE("comparisons follow rational order") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(-1, 3));
  CHECK(Rat(2, 4) <= Rat(1, 2));
  CHECK(Rat(7, 3) > Rat(2));
  CHECK(Rat(1, 2) != Rat(1, 3));
}

TEST_CASE("floor and ceil agree with integer rounding toward -inf and +inf") {
  CHECK(Rat(7, 2).floor() == 3);
  CHECK(Rat(7, 2).ceil() == 4);
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(Rat(-7, 2).ceil() == -3);
  CHECK(Rat(6, 2).floor() == 3);
  CHECK(Rat(6, 2).ceil() == 3);
}

TEST_CASE("integer conversion guards non-integers") {
  CHECK(Rat(6, 2).to_ll() == 3);
  CHECK(Rat(6, 2).is_integer());
  CHECK_FALSE(Rat(1, 2).is_integer());
  CHECK_THROWS_AS(Rat(1, 2).to_ll(), std::domain_error);
}

TEST_CASE("sign and abs") {
  CHECK(Rat(-3, 7).sign() == -1);
  CHECK(Rat().sign() == 0);
  CHECK(Rat(3, 7).sign() == 1);
  CHECK(Rat(-3, 7).abs() == Rat(3, 7));
  CHECK(Rat(3, 7).abs() == Rat(3, 7));
}

TEST_CASE("rat_lcm_den is the least common denominator") {
  CHECK(rat_lcm_den({Rat(1, 2), Rat(1, 3), Rat(5)}) == Rat(6));
  CHECK(rat_lcm_den({Rat(1, 4), Rat(1, 6)}) == Rat(12));
  CHECK(rat_lcm_den({}) == Rat(1));
  CHECK(rat_lcm_den({Rat(3), Rat(-2)}) == Rat(1));
}

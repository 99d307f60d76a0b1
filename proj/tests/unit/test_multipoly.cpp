#include "doctest.h"

#include "hypsign/multipoly.hpp"

using namespace hypsign;

TEST_SUITE("multipoly") {
  TEST_CASE("parsing and canonical form") {
    MultiPoly a = MultiPoly::parse("(x+g)^2");
    MultiPoly b = MultiPoly::parse("x^2+2gx+g^2");
    CHECK(a == b);
    CHECK(MultiPoly::parse("AB") == MultiPoly::parse("BA"));
    CHECK(MultiPoly::parse("x-x").is_zero());
    CHECK(MultiPoly::parse("-x^2").evaluate({{"x", Rational(3)}}) == -9);
    CHECK(MultiPoly::parse("2(B-A)+(1-AB)-g^2") == MultiPoly::parse("2B-2A+1-AB-g^2"));
    CHECK(MultiPoly::parse("x/2") == MultiPoly::parse("x") * MultiPoly::constant(Rational(1, 2)));
    CHECK_THROWS_AS(MultiPoly::parse("(x+1"), std::invalid_argument);
    CHECK_THROWS_AS(MultiPoly::parse("x^-1"), std::invalid_argument);
    CHECK_THROWS_AS(MultiPoly::parse("x/y"), std::invalid_argument);
  }

  TEST_CASE("coefficients and degrees") {
    MultiPoly p = MultiPoly::parse("(x+g)(x-A)");
    CHECK(p.degree_in("x") == 2);
    CHECK(p.degree_in("g") == 1);
    CHECK(p.degree_in("h") == 0);
    CHECK(p.coefficient("x", 1) == MultiPoly::parse("g-A"));
    CHECK(p.coefficient("x", 0) == MultiPoly::parse("-gA"));
    CHECK(p.coefficient("x", 5).is_zero());
  }

  TEST_CASE("evaluation and partial substitution") {
    MultiPoly p = MultiPoly::parse("g^2A-3B+1");
    CHECK(p.evaluate({{"g", Rational(2)}, {"A", Rational(1, 2)}, {"B", Rational(1)}}) == 0);
    MultiPoly q = p.partial({{"g", Rational(2)}});
    CHECK(q == MultiPoly::parse("4A-3B+1"));
    CHECK_THROWS(p.evaluate({{"g", Rational(1)}}));
  }

  TEST_CASE("arithmetic") {
    MultiPoly x = MultiPoly::variable("x");
    MultiPoly one = MultiPoly::constant(1);
    CHECK((x + one).pow(3) == MultiPoly::parse("x^3+3x^2+3x+1"));
    CHECK((x - one) * (x + one) == MultiPoly::parse("x^2-1"));
    CHECK(-(x - one) == one - x);
    CHECK(x.pow(0) == one);
    CHECK(MultiPoly::parse("3AB^3").to_string().find("A") != std::string::npos);
  }
}

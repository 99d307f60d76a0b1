#include <random>
#include <vector>

#include "doctest.h"

#include "hypsign/polynomial.hpp"
#include "hypsign/rational.hpp"

using namespace hypsign;

namespace {

Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 9);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

std::vector<Rational> nonzero_roots(std::mt19937_64& rng, int n) {
  std::vector<Rational> out;
  while (static_cast<int>(out.size()) < n) {
    Rational r = small_rational(rng);
    if (r != 0) out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_SUITE("polyalg") {
  TEST_CASE("decimal literals parse to exact rationals") {
    CHECK(parse_decimal("-0.0033203125") == Rational(-17, 5120));
    CHECK(parse_decimal("1.0011849e6") == Rational(10011849, 10));
    CHECK(parse_decimal("1e-8") == Rational(1, 100000000));
    CHECK(parse_decimal("3168") == 3168);
    CHECK(parse_rational("-7/21") == Rational(-1, 3));
    CHECK_THROWS_AS(parse_decimal("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_decimal(""), std::invalid_argument);
  }

  TEST_CASE("decimal rendering") {
    CHECK(to_exact_decimal(Rational(-17, 5120)) == "-0.0033203125");
    CHECK(to_decimal(Rational(1, 3), 5) == "0.33333");
    CHECK(to_display(Rational(5, 4)) == "1.25");
    CHECK(to_exact_string(Rational(1, 3)) == "1/3");
    CHECK(parse_rational(to_exact_string(Rational(-22, 7))) == Rational(-22, 7));
    CHECK(!is_terminating_decimal(Rational(1, 6)));
    CHECK(round_to_digits(0.123456789, 4) == Rational(247, 2000));
  }

  TEST_CASE("expansion from roots matches hand products") {
    std::vector<Rational> r{1, 2};
    CHECK(expand_from_roots(r) == Polynomial({2, -3, 1}));
    std::vector<Rational> r3{-1, Rational(1, 2), 3};
    Polynomial p = expand_from_roots(r3);
    CHECK(p == Polynomial({Rational(3, 2), -2, Rational(-5, 2), 1}));
    for (const auto& x : r3) CHECK(p(x) == 0);
  }

  TEST_CASE("division and gcd") {
    std::vector<Rational> a_roots{1, 2}, b_roots{1, 3};
    Polynomial a = expand_from_roots(a_roots), b = expand_from_roots(b_roots);
    CHECK(gcd(a, b) == Polynomial({-1, 1}));
    auto dm = divmod(a * b + Polynomial({5}), a);
    CHECK(dm.quotient == b);
    CHECK(dm.remainder == Polynomial({5}));
    CHECK_THROWS_AS(divmod(a, Polynomial()), std::domain_error);
  }

  TEST_CASE("reversion reciprocates roots and is an involution") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
      auto roots = nonzero_roots(rng, 1 + static_cast<int>(rng() % 6));
      Polynomial p = expand_from_roots(roots);
      std::vector<Rational> rec;
      for (const auto& r : roots) rec.push_back(1 / r);
      CHECK(revert(p) == expand_from_roots(rec));
      CHECK(revert(revert(p)) == p);
    }
    CHECK_THROWS_AS(revert(Polynomial({0, 1})), std::domain_error);
  }

  TEST_CASE("sign evaluation matches rational Horner") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 500; ++it) {
      std::vector<Rational> c;
      for (int k = 0, n = 1 + static_cast<int>(rng() % 7); k < n; ++k) c.push_back(small_rational(rng));
      Polynomial p(c);
      Rational x = small_rational(rng);
      Rational acc = 0;
      for (auto k = c.size(); k-- > 0;) acc = acc * x + c[k];
      CHECK(p.sign_at(x) == sgn(acc));
    }
    std::vector<Rational> r{1, Rational(2, 3)};
    CHECK(expand_from_roots(r).sign_at(Rational(2, 3)) == 0);
    CHECK(Polynomial().sign_at(5) == 0);
  }

  TEST_CASE("derivative, scaling and reflection") {
    Polynomial p({1, 2, 3});
    CHECK(derivative(p) == Polynomial({2, 6}));
    std::vector<Rational> roots{2, -4};
    Polynomial q = expand_from_roots(roots);
    std::vector<Rational> halved{1, -2};
    CHECK(scale_variable(q, 2) == expand_from_roots(halved));
    std::vector<Rational> neg{-2, 4};
    CHECK(reflect(q) == expand_from_roots(neg));
    CHECK_THROWS_AS(scale_variable(q, 0), std::invalid_argument);
  }

  TEST_CASE("resultant equals the product of root differences") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 100; ++it) {
      auto ra = nonzero_roots(rng, 1 + static_cast<int>(rng() % 4));
      auto rb = nonzero_roots(rng, 1 + static_cast<int>(rng() % 4));
      Rational prod = 1;
      for (const auto& x : ra)
        for (const auto& y : rb) prod *= x - y;
      CHECK(resultant(expand_from_roots(ra), expand_from_roots(rb)) == prod);
    }
    CHECK(resultant(Polynomial({-1, 0, 1}), Polynomial({-1, 1})) == 0);
  }

  TEST_CASE("determinant and interpolation") {
    CHECK(determinant({{2, 1}, {7, 4}}) == 1);
    CHECK(determinant({{0, 1, 2}, {1, 0, 3}, {4, -3, 8}}) == -2);
    Polynomial p({3, 0, -2, 1});
    std::vector<Rational> xs{0, 1, 2, 5}, ys;
    for (const auto& x : xs) ys.push_back(p(x));
    CHECK(interpolate(xs, ys) == p);
    std::vector<Rational> dup{1, 1};
    CHECK_THROWS_AS(interpolate(dup, std::vector<Rational>{1, 2}), std::invalid_argument);
  }

  TEST_CASE("root configurations") {
    RootConfiguration rc({Rational(-3), Rational(1, 2), Rational(2)});
    CHECK(rc.positive_count() == 2);
    CHECK(rc.negative_count() == 1);
    CHECK(rc.has_distinct_moduli());
    CHECK(rc.reciprocal().reciprocal() == rc);
    CHECK(!RootConfiguration({Rational(-1), Rational(1)}).has_distinct_moduli());
    CHECK_THROWS_AS(RootConfiguration({Rational(0)}), std::invalid_argument);
  }
}

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "hypsign/realroots.hpp"

using namespace hypsign;

namespace {

std::vector<Rational> random_roots(std::mt19937_64& rng, int n, bool allow_repeats) {
  std::vector<Rational> out;
  std::set<Rational> seen;
  while (static_cast<int>(out.size()) < n) {
    Rational r(static_cast<long>(rng() % 201) - 100, 1 + static_cast<long>(rng() % 7));
    r.canonicalize();
    if (!allow_repeats && !seen.insert(r).second) continue;
    out.push_back(r);
  }
  return out;
}

// x^2 + b x + c with b^2 < 4c: no real roots.
Polynomial complex_pair(std::mt19937_64& rng) {
  Rational b(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 3));
  b.canonicalize();
  Rational c = b * b / 4 + Rational(1 + static_cast<long>(rng() % 50), 10);
  c.canonicalize();
  return Polynomial({c, b, 1});
}

}  // namespace

TEST_SUITE("realroots") {
  TEST_CASE("Sturm counts") {
    Polynomial p({-2, 0, 1});
    CHECK(count_real_roots(p) == 2);
    CHECK(count_real_roots(p, Rational(0), Rational(2)) == 1);
    CHECK(count_real_roots(Polynomial({1, 0, 1})) == 0);
    SturmChain sc(p);
    CHECK(sc.variations_at_neg_inf() - sc.variations_at_pos_inf() == 2);
    std::vector<Rational> r{1, 1, -2};
    Polynomial q = expand_from_roots(r);
    CHECK(count_real_roots(q) == 2);
    CHECK(count_real_roots_with_multiplicity(q) == 3);
    CHECK(is_hyperbolic(q));
    CHECK(!is_squarefree(q));
    CHECK(squarefree_part(q) == Polynomial({-2, 1, 1}));
    CHECK(count_real_roots(q, Rational(1), std::nullopt) == 0);
  }

  TEST_CASE("Yun decomposition") {
    std::vector<Rational> r{1, 2, 2, -3, -3, -3};
    auto parts = squarefree_decomposition(expand_from_roots(r));
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == Polynomial({-1, 1}));
    CHECK(parts[1] == Polynomial({-2, 1}));
    CHECK(parts[2] == Polynomial({3, 1}));
  }

  TEST_CASE("isolation brackets every known root exactly once") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 300; ++it) {
      auto roots = random_roots(rng, 1 + static_cast<int>(rng() % 7), false);
      std::sort(roots.begin(), roots.end());
      Polynomial p = expand_from_roots(roots);
      auto ivs = isolate_roots(p);
      REQUIRE(ivs.size() == roots.size());
      Rational bound = root_bound(p);
      for (std::size_t i = 0; i < roots.size(); ++i) {
        CHECK(ivs[i].lo <= roots[i]);
        CHECK(roots[i] <= ivs[i].hi);
        CHECK(abs(roots[i]) < bound);
        if (i > 0) CHECK(ivs[i - 1].hi <= ivs[i].lo);
        auto fine = refine(p, ivs[i], Rational(1, 1000000));
        CHECK(fine.width() <= Rational(1, 1000000));
        CHECK(fine.lo <= roots[i]);
        CHECK(roots[i] <= fine.hi);
        auto ex = exact_or_refined(p, ivs[i], Rational(1, 1000000));
        CHECK(ex.is_exact());
        CHECK(ex.lo == roots[i]);
      }
    }
    CHECK_THROWS_AS(isolate_roots(Polynomial({1, -2, 1})), std::invalid_argument);
  }

  TEST_CASE("multiplicities") {
    std::vector<Rational> r{Rational(1, 3), Rational(1, 3), 5, -2, -2, -2};
    auto rr = real_roots_with_multiplicity(expand_from_roots(r));
    REQUIRE(rr.size() == 3);
    CHECK(rr[0].multiplicity == 3);
    CHECK(rr[1].multiplicity == 2);
    CHECK(rr[2].multiplicity == 1);
  }

  TEST_CASE("hyperbolicity agrees with construction") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 2000; ++it) {
      int n = 1 + static_cast<int>(rng() % 6);
      Polynomial p = expand_from_roots(random_roots(rng, n, true));
      bool add_pair = rng() % 2 == 0;
      if (add_pair) p = p * complex_pair(rng);
      CHECK(is_hyperbolic(p) == !add_pair);
    }
  }

  TEST_CASE("Rolle interlacing of the derivative") {
    std::mt19937_64 rng(29);
    for (int it = 0; it < 300; ++it) {
      auto roots = random_roots(rng, 2 + static_cast<int>(rng() % 6), false);
      std::sort(roots.begin(), roots.end());
      Polynomial dp = derivative(expand_from_roots(roots));
      auto crit = isolate_roots(squarefree_part(dp));
      REQUIRE(crit.size() == roots.size() - 1);
      for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        CHECK(count_real_roots(dp, roots[i], roots[i + 1]) == 1);
        CHECK(roots[i] < crit[i].hi);
        CHECK(crit[i].lo < roots[i + 1]);
      }
    }
  }

  TEST_CASE("comparison of algebraic roots") {
    Polynomial a({-2, 0, 1});
    Polynomial b({-3, 0, 1});
    auto ra = isolate_roots(a);
    auto rb = isolate_roots(b);
    CHECK(compare_roots(a, ra[1], b, rb[1]) < 0);
    CHECK(compare_roots(b, rb[0], a, ra[0]) < 0);
    Polynomial c({-4, 0, 2});
    auto rc = isolate_roots(c);
    CHECK(compare_roots(a, ra[1], c, rc[1]) == 0);
    CHECK(sign_at_root(Polynomial({-1, 1}), a, ra[1]) > 0);
  }

  TEST_CASE("simplest rational") {
    CHECK(simplest_rational(Rational(3, 10), Rational(4, 10)) == Rational(1, 3));
    CHECK(simplest_rational(Rational(-7, 4), Rational(-3, 2)) == Rational(-3, 2));
    CHECK(simplest_rational(Rational(1, 2), Rational(3, 2)) == 1);
    CHECK(simplest_rational(Rational(5), Rational(5)) == 5);
  }
}

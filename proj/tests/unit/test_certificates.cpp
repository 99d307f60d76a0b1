#include <set>
#include <string>

#include "doctest.h"

#include "hypsign/certificates.hpp"
#include "hypsign/errors.hpp"
#include "hypsign/signcase.hpp"

using namespace hypsign;

TEST_SUITE("certificates") {
  TEST_CASE("inventory") {
    const auto& certs = builtin_certificates();
    CHECK(certs.size() >= 24);
    std::set<std::string> ids;
    for (const auto& c : certs) {
      CHECK(ids.insert(c.id).second);
      CHECK(c.printed.size() == static_cast<std::size_t>(c.degree() + 1));
      CHECK(block_form(c.claimed_sp).has_value());
    }
    CHECK(builtin_certificate("d7-s323-050").degree() == 7);
    CHECK_THROWS_AS(builtin_certificate("nope"), std::out_of_range);
  }

  TEST_CASE("factored forms") {
    auto r = parse_factored_roots("(x-0.01)(x+0.25)^4(x-1)");
    REQUIRE(r.size() == 6);
    CHECK(r[0] == Rational(1, 100));
    CHECK(r[1] == Rational(-1, 4));
    CHECK(r[4] == Rational(-1, 4));
    CHECK(r[5] == 1);
    auto sym = parse_factored_roots("(x-2)(x+2)^2");
    CHECK(sym == std::vector<Rational>{2, -2, -2});
    CHECK_THROWS_AS(parse_factored_roots("(y-1)"), std::invalid_argument);
  }

  TEST_CASE("splitting multiple roots") {
    std::vector<Rational> r{1, Rational(-1, 4), Rational(-1, 4), Rational(-1, 4)};
    auto s = split_multiple_roots(r, Rational(1, 1000));
    std::multiset<Rational> got(s.begin(), s.end());
    std::multiset<Rational> want{1, Rational(-1, 4) - Rational(1, 1000), Rational(-1, 4), Rational(-1, 4) + Rational(1, 1000)};
    CHECK(got == want);
  }

  TEST_CASE("sign patterns and cases of every certificate") {
    for (const auto& c : builtin_certificates()) {
      auto rep = verify_certificate(c);
      INFO(c.id);
      CHECK(rep.sp_match);
      CHECK(rep.case_match);
      CHECK(rep.printed_precision_match);
      REQUIRE(rep.generic_roots.has_value());
      RootConfiguration rc = *rep.generic_roots;
      CHECK(sign_pattern(rc.expand()) == c.claimed_sp);
      CHECK(case_of(rc) == c.claimed_case);
      CHECK(rep.split_epsilon.has_value() == c.has_multiple_roots());
    }
  }

  TEST_CASE("exact expansion audit") {
    std::set<std::string> rounded;
    for (const auto& c : builtin_certificates()) {
      auto rep = verify_certificate(c);
      if (!rep.expansion_match) rounded.insert(c.id);
      CHECK(rep.expansion_match == (c.printed_polynomial() == c.exact_expansion()));
    }
    CHECK(rounded == std::set<std::string>{"s331-031", "s232-004", "d7-s323-050"});
  }

  TEST_CASE("a corrupted coefficient is reported") {
    Certificate c = builtin_certificate("s421-004");
    c.printed[3] = "56274";
    auto rep = verify_certificate(c);
    CHECK(!rep.expansion_match);
    CHECK(!rep.all_pass());
    CHECK(rep.mismatched_powers == std::vector<int>{3});
    CHECK(!rep.printed_precision_match);
  }

  TEST_CASE("a wrong claimed case is reported") {
    Certificate c = builtin_certificate("s421-004");
    c.claimed_case = InterleavingCase{{1, 0, 3}};
    auto rep = verify_certificate(c);
    CHECK(rep.expansion_match);
    CHECK(rep.sp_match);
    CHECK(!rep.case_match);
  }

  TEST_CASE("padding the degree-7 witness") {
    const Certificate& base = builtin_certificate("d7-s323-050");
    Certificate p11 = pad_witness(base, 1, 1, Rational(1, 1000));
    RootConfiguration r11(p11.roots);
    CHECK(p11.degree() == 9);
    CHECK(sign_pattern(r11.expand()) == SignPattern::parse("++++--++++"));
    CHECK(case_of(r11) == InterleavingCase{{1, 5, 1}});

    Certificate p20 = pad_witness(base, 2, 0, Rational(1, 1000));
    RootConfiguration r20(p20.roots);
    CHECK(sign_pattern(r20.expand()) == SignPattern::parse("+++++--+++"));
    CHECK(case_of(r20) == InterleavingCase{{0, 5, 2}});
    CHECK_THROWS_AS(pad_witness(base, 1, 0, Rational(1, 10)), std::invalid_argument);
  }
}

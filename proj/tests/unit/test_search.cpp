#include <cmath>
#include <vector>

#include "doctest.h"

#include "hypsign/reference.hpp"
#include "hypsign/search.hpp"
#include "hypsign/signcase.hpp"

using namespace hypsign;

namespace {

SearchConfig small_config(std::uint64_t budget, unsigned workers = 1) {
  SearchConfig cfg;
  cfg.budget = budget;
  cfg.workers = workers;
  return cfg;
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("configuration validation") {
    SearchConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.budget = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.min_modulus = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.strategies.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }

  TEST_CASE("strategy names") {
    for (auto s : {Strategy::LogUniform, Strategy::ClusterNearOne, Strategy::Template, Strategy::LocalRefine})
      CHECK(parse_strategy(to_string(s)) == s);
    CHECK(parse_strategy("template") == Strategy::Template);
    CHECK_THROWS_AS(parse_strategy("annealing"), std::invalid_argument);
  }

  TEST_CASE("random streams are reproducible") {
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
      double u = c.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
      CHECK(c.below(7) < 7);
    }
    CHECK(derive_seed(1, "cell", 0) != derive_seed(1, "cell", 1));
    CHECK(derive_seed(1, "cell", 0) != derive_seed(2, "cell", 0));
    CHECK(derive_seed(1, "cell", 3) == derive_seed(1, "cell", 3));
  }

  TEST_CASE("sampled moduli stay in range with bounded digits") {
    SearchConfig cfg;
    Sampler s(6, cfg);
    Rng rng(8);
    InterleavingCase k{{0, 2, 2}};
    for (int i = 0; i < 2000; ++i) {
      auto rc = s.sample(k, rng, cfg.strategies[i % cfg.strategies.size()]);
      CHECK(case_of(rc) == k);
      for (const auto& r : rc.roots()) {
        double m = std::fabs(r.get_d());
        CHECK(m >= 1e-6 * (1 - 1e-7));
        CHECK(m <= 1e6 * (1 + 1e-7));
        CHECK(is_terminating_decimal(r));
      }
    }
  }

  TEST_CASE("witness verification is exact") {
    RootConfiguration rc({Rational(-8, 10), Rational(-9, 10), Rational(1), Rational(5), Rational(-51, 10),
                          Rational(-52, 10)});
    CHECK(verify_witness(rc, sigma(2, 3, 2), InterleavingCase{{2, 0, 2}}));
    CHECK(!verify_witness(rc, sigma(2, 3, 2), InterleavingCase{{1, 1, 2}}));
    CHECK(!verify_witness(rc, sigma(3, 2, 2), InterleavingCase{{2, 0, 2}}));
  }

  TEST_CASE("search finds a (2,0,2) witness for sigma(2,3,2)") {
    auto res = search_realization(sigma(2, 3, 2), InterleavingCase{{2, 0, 2}}, small_config(10000));
    REQUIRE(res.witness.has_value());
    CHECK(verify_witness(*res.witness, sigma(2, 3, 2), InterleavingCase{{2, 0, 2}}));
    CHECK(res.samples_used <= 10000);
    CHECK(res.strategy.has_value());
  }

  TEST_CASE("search is deterministic and independent of worker count") {
    auto sp = sigma(3, 3, 1);
    InterleavingCase k{{0, 2, 2}};
    auto a = search_realization(sp, k, small_config(20000, 1));
    auto b = search_realization(sp, k, small_config(20000, 1));
    auto c = search_realization(sp, k, small_config(20000, 4));
    REQUIRE(a.witness.has_value());
    CHECK(a.witness == b.witness);
    CHECK(a.witness == c.witness);
    CHECK(a.samples_used == c.samples_used);
  }

  TEST_CASE("an excluded cell stays empty") {
    auto res = search_realization(sigma(1, 5, 1), InterleavingCase{{1, 3, 0}}, small_config(3000));
    CHECK(!res.witness.has_value());
    CHECK(res.samples_used == 3000);
  }

  TEST_CASE("classification of degree 4 with two sign changes") {
    auto table = classify(4, 2, small_config(2000, 2));
    CHECK(table.cells.size() == block_patterns(4, 2).size() * all_cases(2, 3).size());
    for (const auto& cell : table.cells) {
      if (cell.status == CellStatus::Witness) {
        REQUIRE(cell.witness.has_value());
        CHECK(verify_witness(*cell.witness, cell.sp, cell.kase));
      }
      if (cell.kase == canonical_case(cell.sp)) CHECK(cell.status == CellStatus::Witness);
    }
    ClassifyOptions both;
    both.use_reversion = true;
    auto mirrored = classify(4, 2, small_config(2000, 2), both);
    for (const auto& cell : mirrored.cells)
      if (cell.status == CellStatus::Witness) CHECK(verify_witness(*cell.witness, cell.sp, cell.kase));
  }

  TEST_CASE("without the filter every cell is searched") {
    ClassifyOptions opts;
    opts.theorem_filter = false;
    auto table = classify(4, 1, small_config(500), opts);
    CHECK(table.count(CellStatus::Excluded) == 0);
    CHECK(!table.theorem_filter);
  }

  TEST_CASE("reference tables") {
    auto ref = reference_table(6, 2);
    CHECK(ref.count(Expectation::Realizable) == 69);
    CHECK(ref.at(sigma(1, 5, 1), InterleavingCase{{0, 4, 0}}) == Expectation::Realizable);
    CHECK(ref.at(sigma(2, 4, 1), InterleavingCase{{0, 1, 3}}) == Expectation::NotRealizable);
    CHECK(ref.at(sigma(1, 4, 2), InterleavingCase{{3, 1, 0}}) == Expectation::NotRealizable);
    for (const auto& [key, e] : ref.cells) {
      auto mirror = std::make_pair(key.first.reverted(), key.second.reversed());
      CHECK(ref.at(mirror.first, mirror.second) == e);
    }
    auto d5 = reference_table(5, 1);
    CHECK(d5.at(sigma2(2, 4), InterleavingCase{{3, 1}}) == Expectation::Realizable);
    CHECK(d5.at(sigma2(2, 4), InterleavingCase{{0, 4}}) == Expectation::NotRealizable);
  }

  TEST_CASE("table comparison reports mismatches") {
    auto table = classify(4, 2, small_config(2000));
    auto same = compare_table(table, as_reference(table));
    CHECK(same.empty());
    auto ref = as_reference(table);
    auto& first = ref.cells.begin()->second;
    first = first == Expectation::Realizable ? Expectation::NotRealizable : Expectation::Realizable;
    auto diff = compare_table(table, ref);
    CHECK(diff.mismatches.size() == 1);
  }
}

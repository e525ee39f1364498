#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adicscope/diagram_io.hpp"
#include "adicscope/errors.hpp"
#include "adicscope/examples.hpp"
#include "toys.hpp"

using namespace adicscope;
using namespace adicscope::testing;

TEST_CASE("characteristic sequence and word lengths") {
  for (int id = 1; id <= 6; ++id) {
    const auto [spec, meta] = build_example(id, 5);
    CHECK(spec.rank() == 7);
    CHECK(spec.depth() == 5);
    CHECK(spec.q(2) == 50);
    CHECK(spec.q(3) == 15625);
    CHECK(spec.q(4) == 390625);
    CHECK(spec.q(5) == 9765625);
    for (int n = 2; n <= 5; ++n)
      for (int t = 1; t <= 7; ++t)
        CHECK(spec.word(n, t).length() == spec.q(n));
  }
  CHECK((BigInt(15625) - 1) / 12 == 1302);
}

TEST_CASE("every built example is proper") {
  for (int id = 1; id <= 6; ++id) {
    const auto [spec, meta] = build_example(id, 4);
    const auto rep = validate_properness(spec);
    CHECK(rep.all_ok());
  }
}

TEST_CASE("builders are deterministic and example 1 aliases example 2") {
  const auto [a, ma] = build_example(2, 4);
  const auto [b, mb] = build_example(2, 4);
  CHECK(a == b);
  const auto [one, mone] = build_example(1, 4);
  CHECK(one == a);
  CHECK_FALSE(mone.notes.empty());
}

TEST_CASE("example metadata carries the published claims") {
  const auto [ex4, meta4] = build_example(4, 4);
  REQUIRE(meta4.measures.size() == 2);
  CHECK(meta4.measures[0].I == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(meta4.measures[1].I == std::vector<int>{7});
  CHECK(meta4.measures[1].eigenvalues.empty());
  CHECK_FALSE(meta4.notes.empty());  // the w(3)/w(6) length repair

  const auto [ex5, meta5] = build_example(5, 4);
  CHECK(meta5.measures[0].eigenvalues ==
        std::vector<std::pair<long, long>>{{6, 3}});
  CHECK(meta5.measures[1].eigenvalues ==
        std::vector<std::pair<long, long>>{{8, 4}});
}

TEST_CASE("example 3 subdiagrams reproduce the printed induced words") {
  const auto [ex3, meta] = build_example(3, 4);
  SUBCASE("{1,2,3}: Toeplitz with words (123)^{c-2}231 / 13(123)^{c-2}1 / 1(123)^{c-2}21") {
    const DiagramSpec sub = subdiagram_restrict(ex3, {1, 2, 3});
    REQUIRE(sub.toeplitz());
    for (int n = 3; n <= 4; ++n) {
      const BigInt c = (ex3.q(n) - 1) / 3;
      CHECK(sub.word(n, 1) ==
            OrderWord({WordBlock{{1, 2, 3}, c - 2}, WordBlock{{2, 3, 1}, 1}}));
      CHECK(sub.word(n, 2) ==
            OrderWord({WordBlock{{1, 3}, 1}, WordBlock{{1, 2, 3}, c - 2},
                       WordBlock{{1}, 1}}));
      CHECK(sub.word(n, 3) ==
            OrderWord({WordBlock{{1}, 1}, WordBlock{{1, 2, 3}, c - 2},
                       WordBlock{{2, 1}, 1}}));
    }
  }
  SUBCASE("{4,5,6}: renumbered words 13(123)^... with lengths q-5, q-6, q-6") {
    const DiagramSpec sub = subdiagram_restrict(ex3, {4, 5, 6});
    REQUIRE_FALSE(sub.toeplitz());
    for (int n = 3; n <= 4; ++n) {
      const BigInt c = (ex3.q(n) - 1) / 3;
      // 4->1, 5->2, 6->3: "46(456)^{c-2}" etc.
      CHECK(sub.word(n, 1) ==
            OrderWord({WordBlock{{1, 3}, 1}, WordBlock{{1, 2, 3}, c - 2}}));
      CHECK(sub.word(n, 2) ==
            OrderWord({WordBlock{{1}, 1}, WordBlock{{1, 2, 3}, c - 2}}));
      CHECK(sub.word(n, 3) ==
            OrderWord({WordBlock{{1, 2, 3}, c - 2}, WordBlock{{3}, 1}}));
    }
  }
}

TEST_CASE("example 4 subdiagrams: {1..6} loses one letter, {7} loses seven") {
  const auto [ex4, meta] = build_example(4, 4);
  const DiagramSpec core = subdiagram_restrict(ex4, {1, 2, 3, 4, 5, 6});
  REQUIRE(core.toeplitz());
  for (int n = 3; n <= 4; ++n) CHECK(core.q(n) == ex4.q(n) - 1);
  const DiagramSpec odo = subdiagram_restrict(ex4, {7});
  REQUIRE(odo.toeplitz());
  for (int n = 3; n <= 4; ++n) CHECK(odo.q(n) == ex4.q(n) - 7);
}

TEST_CASE("model conformance") {
  SUBCASE("pure scheme words have zero exceptions") {
    const auto [ex2, meta] = build_example(2, 4);
    const auto rep = model_conformance(ex2, 12);
    CHECK(rep.pass);
    for (const auto& row : rep.rows) {
      CHECK(row.best_mismatches <= 12);
      if (row.vertex == 1 || row.vertex == 4 || row.vertex == 7)
        CHECK(row.scheme_mismatches == 0);
      else
        CHECK(row.scheme_mismatches == 2);
    }
  }
  SUBCASE("example 5 fails on words 4..7 and passes on 1..3") {
    const auto [ex5, meta] = build_example(5, 4);
    const auto rep = model_conformance(ex5, 12);
    CHECK_FALSE(rep.pass);
    for (const auto& row : rep.rows) {
      if (row.vertex <= 3)
        CHECK(row.ok);
      else
        CHECK_FALSE(row.ok);
    }
  }
  SUBCASE("wrong rank is an input precondition") {
    CHECK_THROWS_AS(model_conformance(toy_cyclic(), 12), AnalysisError);
  }
}

TEST_CASE("the model k-map is the class difference mod 3") {
  const KMap km = model_kmap();
  for (int t1 = 1; t1 <= 7; ++t1)
    for (int t2 = 1; t2 <= 7; ++t2)
      CHECK(*km.k_of(t1, t2) ==
            ((model_class(t2) - model_class(t1)) % 3 + 3) % 3);
}

TEST_CASE("examples export through the file format") {
  const auto [ex5, meta] = build_example(5, 4);
  CHECK(parse_spec_string(serialize_spec(ex5)) == ex5);
}

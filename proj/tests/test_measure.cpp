#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "adicscope/errors.hpp"
#include "adicscope/examples.hpp"
#include "adicscope/measure.hpp"
#include "toys.hpp"

using namespace adicscope;
using namespace adicscope::testing;

TEST_CASE("uniform seed on the cyclic toy gives thirds at level 1") {
  const DiagramSpec toy = toy_cyclic();
  const MeasureVector mv = measure_estimate(toy, 1, 4, uniform_seed(3));
  for (int t = 1; t <= 3; ++t) CHECK(mv.tower_mass(t) == BigRat(1, 3));
}

TEST_CASE("point-mass seeds are normalized columns") {
  for (const auto& spec : toy_corpus()) {
    const int n = spec.depth();
    const IntMatrix P = product_matrix(spec, 1, n);
    for (int t2 = 1; t2 <= spec.rank(); ++t2) {
      const MeasureVector mv = point_mass_estimate(spec, 1, n, t2);
      for (int t1 = 1; t1 <= spec.rank(); ++t1)
        CHECK(mv.tower_mass(t1) == BigRat(P.at(t1, t2), spec.q_range(1, n)));
    }
  }
}

TEST_CASE("exactness: pulled-back vectors satisfy mu_l = P_{l,m} mu_m") {
  for (const auto& spec : toy_corpus()) {
    if (spec.depth() < 3) continue;
    const int n = spec.depth();
    const MeasureVector at2 = measure_estimate(spec, 2, n, uniform_seed(spec.rank()));
    const MeasureVector at1 = measure_estimate(spec, 1, n, uniform_seed(spec.rank()));
    const IntMatrix P = product_matrix(spec, 1, 2);
    for (int t1 = 1; t1 <= spec.rank(); ++t1) {
      BigRat acc = 0;
      for (int t2 = 1; t2 <= spec.rank(); ++t2)
        acc += BigRat(P.at(t1, t2)) * at2.base[static_cast<std::size_t>(t2 - 1)];
      CHECK(acc == at1.base[static_cast<std::size_t>(t1 - 1)]);
    }
  }
}

TEST_CASE("tower masses always sum to exactly one") {
  for (const auto& spec : toy_corpus())
    for (int m = 1; m < spec.depth(); ++m) {
      const MeasureVector mv =
          measure_estimate(spec, m, spec.depth(), uniform_seed(spec.rank()));
      BigRat total = 0;
      for (const auto& w : mv.tower) total += w;
      CHECK(total == 1);
    }
}

TEST_CASE("bad seeds are rejected") {
  const DiagramSpec toy = toy_cyclic();
  std::vector<BigRat> seed{BigRat(1, 2), BigRat(1, 2), BigRat(1, 2)};
  CHECK_THROWS_AS(measure_estimate(toy, 1, 4, seed), AnalysisError);
}

TEST_CASE("simplex diameter") {
  SUBCASE("identical columns give zero") {
    const DiagramSpec toy = toy_singleton();
    CHECK(simplex_diameter(toy, 1, 2) == 0);
  }
  SUBCASE("contraction: non-increasing as the window deepens") {
    const DiagramSpec toy = toy_cyclic();
    const BigRat d2 = simplex_diameter(toy, 1, 2);
    const BigRat d3 = simplex_diameter(toy, 1, 3);
    const BigRat d4 = simplex_diameter(toy, 1, 4);
    CHECK(d3 <= d2);
    CHECK(d4 <= d3);
    CHECK(d4 < d2);  // strict after two positive steps
  }
  SUBCASE("example 3 keeps a fat simplex (two ergodic measures)") {
    const auto [ex3, meta] = build_example(3, 5);
    CHECK(simplex_diameter(ex3, 2, 5) > BigRat(1, 2));
  }
  SUBCASE("example 2 contracts (uniquely ergodic)") {
    const auto [ex2, meta] = build_example(2, 5);
    CHECK(simplex_diameter(ex2, 2, 5) < BigRat(1, 100));
  }
}

TEST_CASE("cleanliness classification recovers the published I sets") {
  const double delta = 0.05;
  SUBCASE("example 2: one group covering all vertices") {
    const auto [ex2, meta] = build_example(2, 5);
    const auto rep = cleanliness_classify(ex2, 5, delta);
    REQUIRE(rep.groups.size() == 1);
    CHECK(rep.groups[0].I == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
    CHECK(rep.exact_finite_rank);
    CHECK(rep.vanishing.empty());
  }
  SUBCASE("example 3: {1,2,3} and {4,5,6}, vertex 7 vanishes") {
    const auto [ex3, meta] = build_example(3, 5);
    const auto rep = cleanliness_classify(ex3, 5, delta);
    REQUIRE(rep.groups.size() == 2);
    CHECK(rep.groups[0].I == std::vector<int>{1, 2, 3});
    CHECK(rep.groups[1].I == std::vector<int>{4, 5, 6});
    CHECK(rep.vanishing == std::vector<int>{7});
    CHECK_FALSE(rep.exact_finite_rank);
  }
  SUBCASE("example 4: {1..6} and {7}") {
    const auto [ex4, meta] = build_example(4, 5);
    const auto rep = cleanliness_classify(ex4, 5, delta);
    REQUIRE(rep.groups.size() == 2);
    CHECK(rep.groups[0].I == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(rep.groups[1].I == std::vector<int>{7});
    CHECK(rep.vanishing.empty());
  }
  SUBCASE("examples 5 and 6: {1,2,3} and {4,5,6,7}") {
    for (int id : {5, 6}) {
      const auto [ex, meta] = build_example(id, 5);
      const auto rep = cleanliness_classify(ex, 5, delta);
      REQUIRE(rep.groups.size() == 2);
      CHECK(rep.groups[0].I == std::vector<int>{1, 2, 3});
      CHECK(rep.groups[1].I == std::vector<int>{4, 5, 6, 7});
    }
  }
  SUBCASE("proposed I sets are always disjoint") {
    for (int id : {2, 3, 4, 5, 6}) {
      const auto [ex, meta] = build_example(id, 5);
      const auto rep = cleanliness_classify(ex, 5, delta);
      std::vector<int> all;
      for (const auto& g : rep.groups)
        all.insert(all.end(), g.I.begin(), g.I.end());
      std::vector<int> uniq = all;
      std::sort(uniq.begin(), uniq.end());
      uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
      CHECK(all.size() == uniq.size());
    }
  }
}

TEST_CASE("low-independence diagnostic") {
  SUBCASE("primitive toy stays above 1/4") {
    const DiagramSpec toy = toy_cyclic();
    const auto rep = low_independence_check(toy, {1, 2, 3}, 1, 4, 0.05);
    for (const auto& row : rep.rows) CHECK(row.min_ratio >= BigRat(1, 4));
    CHECK(rep.n0 == 2);
  }
  SUBCASE("example 2 meets delta/3 by m + 2") {
    const auto [ex2, meta] = build_example(2, 5);
    const auto rep =
        low_independence_check(ex2, {1, 2, 3, 4, 5, 6, 7}, 2, 5, 0.05);
    CHECK(rep.n0 != 0);
    CHECK(rep.n0 <= 4);
  }
  SUBCASE("singleton I reports the column share") {
    const DiagramSpec toy = toy_cyclic();
    const auto rep = low_independence_check(toy, {2}, 1, 2, 0.05);
    const IntMatrix M = incidence_matrix(toy, 2);
    CHECK(rep.rows[0].min_ratio == BigRat(M.at(2, 2), toy.q(2)));
  }
}

TEST_CASE("tower-mass trajectories") {
  SUBCASE("identical columns give a degenerate interval of exactly 1/3") {
    const DiagramSpec toy =
        make_toy(3, {{"123123", "123123", "123123"},
                     {"123123", "123123", "123123"}});
    const auto table = tower_mass_limit_table(toy, 3);
    for (const auto& row : table.rows) {
      CHECK(row.lo == BigRat(1, 3));
      CHECK(row.hi == BigRat(1, 3));
    }
  }
  SUBCASE("cyclic toy: uniform mix is 1/3, inside the per-seed interval") {
    const DiagramSpec toy = toy_cyclic(4);
    const auto table = tower_mass_limit_table(toy, 4);
    for (int m = 2; m <= 3; ++m) {
      const MeasureVector mv = measure_estimate(toy, m, 4, uniform_seed(3));
      for (int t = 1; t <= 3; ++t) {
        CHECK(mv.tower_mass(t) == BigRat(1, 3));
        const auto& row = table.at(m, t, 3);
        CHECK(row.lo <= BigRat(1, 3));
        CHECK(row.hi >= BigRat(1, 3));
      }
    }
  }
  SUBCASE("example 2 matches the printed bracket and the limit values") {
    const auto [ex2, meta] = build_example(2, 5);
    // Strict bracket for any interior mix; the interval endpoints reached by
    // the extreme point-mass seeds coincide with the bracket itself.
    const auto table = tower_mass_limit_table(ex2, 5);
    for (int m = 2; m <= 4; ++m) {
      const BigInt q_next = ex2.q(m + 1);
      const BigInt c_next = (q_next - 1) / 12;
      const MeasureVector mv = measure_estimate(ex2, m, 5, uniform_seed(7));
      CHECK(mv.tower_mass(1) > BigRat(c_next + 1, q_next));
      CHECK(mv.tower_mass(1) < BigRat(c_next + 4, q_next));
      const auto& row = table.at(m, 1, 7);
      CHECK(row.lo >= BigRat(c_next + 1, q_next));
      CHECK(row.hi <= BigRat(c_next + 4, q_next));
    }
    const MeasureVector mv2 = measure_estimate(ex2, 2, 5, uniform_seed(7));
    for (int t = 1; t <= 7; ++t) {
      const BigRat target = (t == 1 || t == 4) ? BigRat(1, 12) : BigRat(1, 6);
      BigRat err = mv2.tower_mass(t) - target;
      if (err < 0) err = -err;
      CHECK(err <= BigRat(5, 1000));
    }
  }
}

TEST_CASE("column bound for vertices outside I") {
  // P_{m,n}(t1,t2)/q <= mu(tau_m = t1)/delta for t1 outside I, t2 inside.
  for (int id : {3, 4}) {
    const auto [ex, meta] = build_example(id, 5);
    const auto rep = cleanliness_classify(ex, 5, 0.05);
    const MeasureVector mv = measure_estimate(ex, 2, 5, uniform_seed(7));
    const BigRat delta(1, 20);
    for (const auto& g : rep.groups) {
      const IntMatrix P = product_matrix(ex, 2, 5);
      for (int t1 = 1; t1 <= 7; ++t1) {
        if (std::find(g.I.begin(), g.I.end(), t1) != g.I.end()) continue;
        bool t1_in_other = false;
        for (const auto& other : rep.groups)
          if (std::find(other.I.begin(), other.I.end(), t1) != other.I.end())
            t1_in_other = true;
        if (t1_in_other) continue;  // bound applies to vanishing vertices
        for (int t2 : g.I)
          CHECK(BigRat(P.at(t1, t2), ex.q_range(2, 5)) <=
                mv.tower_mass(t1) / delta + BigRat(1, 1000000));
      }
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adicscope/errors.hpp"
#include "adicscope/examples.hpp"
#include "adicscope/residue.hpp"
#include "toys.hpp"

using namespace adicscope;
using namespace adicscope::testing;

TEST_CASE("brute-force suffix sets on the two-letter toy") {
  const DiagramSpec toy = toy_two_letter();
  CHECK(suffix_set_bruteforce(toy, 1, 2, 1, 1) == std::vector<BigInt>{0, 2});
  CHECK(suffix_set_bruteforce(toy, 1, 2, 2, 1) == std::vector<BigInt>{1});
}

TEST_CASE("maximal path has suffix zero; cardinality is the product entry") {
  for (const auto& spec : toy_corpus()) {
    const int n = spec.depth();
    if (spec.q_range(1, n) > 10000) continue;
    const IntMatrix P = product_matrix(spec, 1, n);
    for (int t2 = 1; t2 <= spec.rank(); ++t2) {
      const int last = compose_words(spec, 1, n, t2).last_letter();
      const auto vals = suffix_set_bruteforce(spec, 1, n, last, t2);
      REQUIRE_FALSE(vals.empty());
      CHECK(vals.front() == 0);
      for (int t1 = 1; t1 <= spec.rank(); ++t1)
        CHECK(BigInt(suffix_set_bruteforce(spec, 1, n, t1, t2).size()) ==
              P.at(t1, t2));
    }
  }
}

TEST_CASE("level residue counts of the cyclic word, B = 3") {
  // w(1) = 1 2 3 1: suffixes 3,2,1,0.
  const ResidueCountTensor t = level_residue_counts(toy_cyclic(), 2, 3);
  CHECK(t.at(1, 1, 0) == 2);
  CHECK(t.at(1, 1, 1) == 0);
  CHECK(t.at(1, 1, 2) == 0);
  CHECK(t.at(2, 1, 2) == 1);
  CHECK(t.at(3, 1, 1) == 1);
}

TEST_CASE("B = 1 collapses to the incidence matrix") {
  for (const auto& spec : toy_corpus())
    for (int n = 2; n <= spec.depth(); ++n) {
      const ResidueCountTensor t = level_residue_counts(spec, n, 1);
      const IntMatrix M = incidence_matrix(spec, n);
      for (int t1 = 1; t1 <= spec.rank(); ++t1)
        for (int t2 = 1; t2 <= spec.rank(); ++t2)
          CHECK(t.at(t1, t2, 0) == M.at(t1, t2));
    }
}

TEST_CASE("RLE counts equal brute-force histograms for all B <= 12") {
  for (const auto& spec : toy_corpus())
    for (int m = 1; m < spec.depth(); ++m)
      for (int n = m + 1; n <= spec.depth(); ++n) {
        if (spec.q_range(m, n) > 10000) continue;
        for (long B = 1; B <= 12; ++B) {
          const ResidueCountTensor got = range_residue_counts(spec, m, n, B);
          for (int t2 = 1; t2 <= spec.rank(); ++t2) {
            const auto hist = oracle_residue_hist(spec, m, n, t2, B);
            for (int t1 = 1; t1 <= spec.rank(); ++t1)
              for (long k = 0; k < B; ++k)
                CHECK(got.at(t1, t2, k) ==
                      hist[static_cast<std::size_t>(t1 - 1)]
                          [static_cast<std::size_t>(k)]);
          }
        }
      }
}

TEST_CASE("composition is independent of the intermediate level") {
  for (const auto& spec : toy_corpus()) {
    const int N = spec.depth();
    for (long B : {3L, 5L, 8L})
      for (int m = 1; m + 2 <= N; ++m)
        for (int n = m + 2; n <= N; ++n) {
          const ResidueCountTensor direct = range_residue_counts(spec, m, n, B);
          for (int l = m + 1; l < n; ++l) {
            const ResidueCountTensor via = compose_tensors(
                range_residue_counts(spec, m, l, B),
                range_residue_counts(spec, l, n, B), spec.q_range(m, l));
            CHECK(via.counts == direct.counts);
          }
        }
  }
}

TEST_CASE("marginals: over k the product matrix, over everything q_{m,n}") {
  for (const auto& spec : toy_corpus()) {
    const int N = spec.depth();
    const ResidueCountTensor t = range_residue_counts(spec, 1, N, 7);
    const IntMatrix P = product_matrix(spec, 1, N);
    for (int t2 = 1; t2 <= spec.rank(); ++t2) {
      BigInt col = 0;
      for (int t1 = 1; t1 <= spec.rank(); ++t1) {
        CHECK(t.pair_total(t1, t2) == P.at(t1, t2));
        col += t.pair_total(t1, t2);
      }
      CHECK(col == t.q_mn);
    }
  }
}

TEST_CASE("class balance: column class sums are floor(q/B) or one more") {
  for (const auto& spec : toy_corpus())
    for (long B : {2L, 3L, 4L, 6L, 11L}) {
      const ResidueCountTensor t =
          range_residue_counts(spec, 1, spec.depth(), B);
      const BigInt lo = t.q_mn / B;
      for (int t2 = 1; t2 <= spec.rank(); ++t2)
        for (long k = 0; k < B; ++k) {
          BigInt s = 0;
          for (int t1 = 1; t1 <= spec.rank(); ++t1) s += t.at(t1, t2, k);
          const bool balanced = (s == lo) || (s == lo + 1);
          CHECK(balanced);
        }
    }
}

TEST_CASE("sigma sums on the cyclic toy, b = 3") {
  const DiagramSpec toy = toy_cyclic();
  const ResidueCountTensor t = level_residue_counts(toy, 2, 3);
  const SigmaSums s = sigma_sums_raw(t, 1, 3, 1);  // p_1 = 1
  double total = 0;
  for (int t1 = 1; t1 <= 3; ++t1) total += s.mag(t1, 1);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.mag(1, 1) == doctest::Approx(0.5));
  CHECK(s.mag(2, 1) == doctest::Approx(0.25));
  CHECK(s.mag(3, 1) == doctest::Approx(0.25));
}

TEST_CASE("singleton-class toy gives exactly 1/d per pair") {
  const DiagramSpec toy = toy_singleton();
  const ResidueCountTensor t = level_residue_counts(toy, 2, 3);
  const SigmaSums s = sigma_sums_raw(t, 1, 3, 1);
  for (int t1 = 1; t1 <= 3; ++t1)
    for (int t2 = 1; t2 <= 3; ++t2)
      CHECK(s.mag(t1, t2) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("b = 1 makes sigma the product matrix") {
  for (const auto& spec : toy_corpus()) {
    const ResidueCountTensor t = range_residue_counts(spec, 1, spec.depth(), 1);
    const SigmaSums s = sigma_sums_raw(t, 1, 1, 0);
    const IntMatrix P = product_matrix(spec, 1, spec.depth());
    for (int t1 = 1; t1 <= spec.rank(); ++t1)
      for (int t2 = 1; t2 <= spec.rank(); ++t2)
        CHECK(s.mag(t1, t2) ==
              doctest::Approx(to_double(BigRat(P.at(t1, t2), t.q_mn)))
                  .epsilon(1e-12));
  }
}

TEST_CASE("triangle bound |Sigma| <= P within tolerance") {
  for (const auto& spec : toy_corpus())
    for (long b : {2L, 3L, 5L, 6L, 8L}) {
      const ResidueCountTensor t =
          range_residue_counts(spec, 1, spec.depth(), b);
      const SigmaSums s = sigma_sums_raw(t, 1, b, 1);
      for (int t1 = 1; t1 <= spec.rank(); ++t1)
        for (int t2 = 1; t2 <= spec.rank(); ++t2)
          CHECK(s.mag(t1, t2) <=
                to_double(BigRat(t.pair_total(t1, t2), t.q_mn)) + 1e-9);
    }
}

TEST_CASE("all counts in one class give |Sigma| = P") {
  const DiagramSpec toy = toy_parity();
  const ResidueCountTensor t = range_residue_counts(toy, 2, 4, 2);
  const SigmaSums s = sigma_sums_raw(t, 1, 2, 1);
  for (int t1 = 1; t1 <= 2; ++t1)
    for (int t2 = 1; t2 <= 2; ++t2)
      CHECK(s.mag(t1, t2) ==
            doctest::Approx(to_double(BigRat(t.pair_total(t1, t2), t.q_mn)))
                .epsilon(1e-12));
}

TEST_CASE("sigma rejects a modulus mismatch") {
  const ResidueCountTensor t = level_residue_counts(toy_cyclic(), 2, 3);
  CHECK_THROWS_AS(sigma_sums_raw(t, 1, 4, 1), AnalysisError);
}

TEST_CASE("example-2 depth-4 window agrees with the collapsed mod-3 view") {
  const auto [ex2, meta] = build_example(2, 4);
  const ResidueCountTensor t6 = range_residue_counts(ex2, 2, 4, 6);
  const ResidueCountTensor t3 = collapse_tensor(t6, 3);
  for (int t1 = 1; t1 <= 7; ++t1)
    for (int t2 = 1; t2 <= 7; ++t2) {
      BigInt direct0 = t6.at(t1, t2, 0) + t6.at(t1, t2, 3);
      CHECK(direct0 == t3.at(t1, t2, 0));
    }
  CHECK(t6.q_mn == ex2.q(3) * ex2.q(4));
}

// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Tolerances and thresholds are pinned here, in code.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "adicscope/diagram.hpp"
#include "adicscope/eigen.hpp"
#include "adicscope/errors.hpp"
#include "adicscope/examples.hpp"
#include "adicscope/measure.hpp"
#include "adicscope/residue.hpp"
#include "adicscope/vershik.hpp"
#include "toys.hpp"

using namespace adicscope;
using namespace adicscope::testing;

namespace {

int failures = 0;

struct Checker {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double run_criterion(int id, const std::string& name,
                     const std::function<void(Checker&)>& body,
                     double budget_seconds) {
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  c.expect(secs < budget_seconds,
           "runtime " + format_double(secs) + "s over budget " +
               format_double(budget_seconds) + "s");
  std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL",
              id, name.c_str(), secs, c.ok ? "" : " -- ",
              c.ok ? "" : c.detail.c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
  return secs;
}

// 1 ------------------------------------------------------------------------

void criterion1(Checker& c) {
  const auto corpus = toy_corpus();
  c.expect(corpus.size() >= 20, "corpus smaller than 20 specs");
  for (const auto& spec : corpus) {
    for (int m = 1; m < spec.depth(); ++m)
      for (int n = m + 1; n <= spec.depth(); ++n) {
        if (spec.q_range(m, n) > 10000) continue;
        for (int t2 = 1; t2 <= spec.rank(); ++t2) {
          const auto sorted = oracle_sorted_sources(spec, m, n, t2);
          const auto composed = compose_words(spec, m, n, t2).expand(10000);
          c.expect(composed == sorted, "compose_words mismatch");
          for (long B = 1; B <= 12; ++B) {
            const auto hist = oracle_residue_hist(spec, m, n, t2, B);
            const auto tensor = range_residue_counts(spec, m, n, B);
            for (int t1 = 1; t1 <= spec.rank(); ++t1)
              for (long k = 0; k < B; ++k)
                c.expect(tensor.at(t1, t2, k) ==
                             hist[static_cast<std::size_t>(t1 - 1)]
                                 [static_cast<std::size_t>(k)],
                         "residue count mismatch");
          }
        }
      }
  }
}

// 2 ------------------------------------------------------------------------

void criterion2(Checker& c) {
  const auto [ex2, meta] = build_example(2, 5);
  const BigRat tol(5, 1000);
  const MeasureVector mv = measure_estimate(ex2, 2, 5, uniform_seed(7));
  for (int t = 1; t <= 7; ++t) {
    const BigRat target = (t == 1 || t == 4) ? BigRat(1, 12) : BigRat(1, 6);
    BigRat err = mv.tower_mass(t) - target;
    if (err < 0) err = -err;
    c.expect(err <= tol, "tower mass of vertex " + std::to_string(t) +
                             " off the published limit");
  }
  for (int m = 2; m <= 4; ++m) {
    const BigInt q_next = ex2.q(m + 1);
    const BigInt c_next = (q_next - 1) / 12;
    const MeasureVector at_m = measure_estimate(ex2, m, 5, uniform_seed(7));
    c.expect(at_m.tower_mass(1) > BigRat(c_next + 1, q_next),
             "lower bracket fails at level " + std::to_string(m));
    c.expect(at_m.tower_mass(1) < BigRat(c_next + 4, q_next),
             "upper bracket fails at level " + std::to_string(m));
  }
}

// 3 ------------------------------------------------------------------------

void criterion3(Checker& c) {
  const auto [ex2, meta] = build_example(2, 5);
  const auto cand = classify_candidate(ex2, 1, 6, 5);
  c.expect(cand.status == CandidateStatus::kCandidate, "b=6 not a candidate");
  c.expect(cand.bb == 3, "bb != 3");
  for (int n = 2; n <= 5; ++n)
    c.expect(cand.p_mod_at(n) == 2, "p_n mod 6 != 2");

  const AcceptanceThresholds thresholds;  // tau 0.05, W 3, slack 1e-3
  const auto rep =
      deficiency_table(ex2, cand, {{2, 4}, {2, 5}, {3, 5}}, true);
  for (int t2 = 1; t2 <= 7; ++t2) {
    const double d24 = rep.windows[0].D_of(t2);
    const double d25 = rep.windows[1].D_of(t2);
    const double d35 = rep.windows[2].D_of(t2);
    c.expect(d25 <= d24 + thresholds.monotone_slack,
             "ladder increases beyond slack at (2,5)");
    c.expect(d35 <= d25 + thresholds.monotone_slack,
             "ladder increases beyond slack at (3,5)");
    c.expect(d35 < thresholds.tau_accept, "D(3,5) above threshold");
  }
  const auto res = survey(ex2, 6, 5, {{1, 2, 3, 4, 5, 6, 7}}, thresholds);
  bool b6 = false;
  for (const auto& row : res.measures[0].rows)
    if (row.b == 6 && row.accepted) b6 = true;
  c.expect(b6, "survey does not accept b = 6");
}

// 4 ------------------------------------------------------------------------

void criterion4(Checker& c) {
  const auto [ex2, meta] = build_example(2, 5);
  const auto cand = classify_candidate(ex2, 1, 6, 5);
  const std::vector<int> I{1, 2, 3, 4, 5, 6, 7};
  c.expect(cand.stable_p() == 2, "p != 2");
  c.expect(cocycle_check(model_kmap(), cand, I).pass, "model k-map fails");
  for (int t1 = 1; t1 <= 7; ++t1)
    for (int t2 = 1; t2 <= 7; ++t2)
      for (long delta : {1L, 2L}) {
        KMap bad = model_kmap();
        auto& e = bad.entries[{t1, t2}];
        e.k = (e.k + delta) % 3;
        const auto res = cocycle_check(bad, cand, I);
        c.expect(!res.pass && !res.violations.empty(),
                 "perturbed k-map not caught at (" + std::to_string(t1) + "," +
                     std::to_string(t2) + ")");
      }
}

// 5 ------------------------------------------------------------------------

void criterion5(Checker& c) {
  for (const auto& spec : toy_corpus()) {
    const int N = spec.depth();
    const BigInt pN = spec.p(N);
    if (pN > 10000) continue;
    for (int t = 1; t <= spec.rank(); ++t) {
      c.expect(entrance_time(spec, max_path(spec, N, t), N) == 0,
               "r(max) != 0");
      c.expect(entrance_time(spec, min_path(spec, N, t), N) == pN - 1,
               "r(min) != p_N - 1");
    }
    PathPoint x = min_path(spec, N, 1);
    BigInt r = pN - 1;
    while (!is_max_path(spec, x)) {
      const PathPoint y = successor(spec, x);
      c.expect(entrance_time(spec, y, N) == r - 1, "successor step != -1");
      for (int l = 1; l < N; ++l)
        for (int n = l + 1; n <= N; ++n)
          c.expect(suffix_range(spec, y, l, n) * spec.p(l) ==
                       entrance_time(spec, y, n) - entrance_time(spec, y, l),
                   "suffix identity fails");
      r -= 1;
      x = y;
    }
  }
}

// 6 ------------------------------------------------------------------------

void criterion6(Checker& c) {
  const auto [ex2, meta] = build_example(2, 5);
  const auto cand = classify_candidate(ex2, 1, 6, 5);
  const auto good = convergence_test(ex2, cand, model_kmap(), 1, 200, 5, 2024);
  c.expect(good.fraction >= 0.95,
           "stabilized fraction " + format_double(good.fraction) + " < 0.95");
  const KMap zero = KMap::from_table(
      7, 3, 6, std::vector<std::vector<long>>(7, std::vector<long>(7, 0)));
  const auto bad = convergence_test(ex2, cand, zero, 1, 200, 5, 2024);
  c.expect(good.fraction - bad.fraction >= 0.2,
           "zeroed k-map only drops the fraction by " +
               format_double(good.fraction - bad.fraction));
}

// 7 ------------------------------------------------------------------------

void criterion7(Checker& c) {
  const std::map<int, std::vector<std::vector<int>>> expected{
      {3, {{1, 2, 3}, {4, 5, 6}}},
      {4, {{1, 2, 3, 4, 5, 6}, {7}}},
      {5, {{1, 2, 3}, {4, 5, 6, 7}}},
      {6, {{1, 2, 3}, {4, 5, 6, 7}}},
  };
  for (const auto& [id, want] : expected) {
    const auto [spec, meta] = build_example(id, 5);
    const auto rep = cleanliness_classify(spec, 5, 0.05);
    std::vector<std::vector<int>> got;
    for (const auto& g : rep.groups)
      if (!g.I.empty()) got.push_back(g.I);
    c.expect(got == want, "example " + std::to_string(id) +
                              " I-partition does not match the published one");
  }
}

// 8 ------------------------------------------------------------------------

void criterion8(Checker& c) {
  const AcceptanceThresholds thresholds;
  const auto accepted_bs = [&](const SurveyResult::MeasureEntry& entry) {
    std::vector<long> out;
    for (const auto& row : entry.rows)
      if (row.accepted) out.push_back(row.b.convert_to<long>());
    return out;
  };
  const auto has = [](const std::vector<long>& v, long x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };

  {
    const auto [ex4, meta] = build_example(4, 5);
    const auto res =
        survey(ex4, 8, 5, {{7}, {1, 2, 3, 4, 5, 6}}, thresholds);
    c.expect(accepted_bs(res.measures[0]).empty(),
             "example 4, I={7}: candidate accepted despite bb > #I");
    c.expect(has(accepted_bs(res.measures[1]), 6),
             "example 4, I={1..6}: b=6 not accepted");
    c.expect(res.sum_b_mu <= 7, "example 4: sum b_mu > 7");
  }
  {
    const auto [ex5, meta] = build_example(5, 5);
    const auto res =
        survey(ex5, 8, 5, {{1, 2, 3}, {4, 5, 6, 7}}, thresholds);
    c.expect(has(accepted_bs(res.measures[0]), 6),
             "example 5: b=6 not accepted on {1,2,3}");
    c.expect(has(accepted_bs(res.measures[1]), 8),
             "example 5: b=8 not accepted on {4,5,6,7}");
    c.expect(res.measures[0].b_mu == 3, "example 5: b_mu != 3 on {1,2,3}");
    c.expect(res.measures[1].b_mu == 4, "example 5: b_mu != 4 on {4,5,6,7}");
    c.expect(res.sum_b_mu <= 7, "example 5: sum b_mu > 7");
  }
  {
    const auto [ex6, meta] = build_example(6, 5);
    const auto res =
        survey(ex6, 8, 5, {{1, 2, 3}, {4, 5, 6, 7}}, thresholds);
    c.expect(has(accepted_bs(res.measures[1]), 4),
             "example 6: b=4 not accepted on {4,5,6,7}");
    c.expect(!has(accepted_bs(res.measures[1]), 8),
             "example 6: b=8 wrongly accepted on {4,5,6,7}");
    c.expect(res.sum_b_mu <= 7, "example 6: sum b_mu > 7");
  }
}

// 9 ------------------------------------------------------------------------

void criterion9(Checker& c) {
  const auto [ex2, meta] = build_example(2, 5);
  c.expect(classify_candidate(ex2, 1, 50, 5).status ==
               CandidateStatus::kContinuous,
           "b=50 not continuous");
  for (int n = 2; n <= 5; ++n)
    c.expect(classify_candidate(ex2, 1, ex2.p(n), 5).status ==
                 CandidateStatus::kContinuous,
             "b=p_" + std::to_string(n) + " not continuous");
  c.expect(classify_candidate(ex2, 1, 6, 5).status ==
               CandidateStatus::kCandidate,
           "b=6 not a non-continuous candidate");
}

// 10 -----------------------------------------------------------------------

void criterion10(Checker& c) {
  const auto [ex2, meta] = build_example(2, 6);
  c.expect(ex2.q(6) == BigInt("244140625"), "q_6 != 5^12");
  const auto start = std::chrono::steady_clock::now();
  const ResidueCountTensor tensor = range_residue_counts(ex2, 2, 6, 6);
  const SigmaSums sums =
      sigma_sums(tensor, classify_candidate(ex2, 1, 6, 6));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  c.expect(secs < 30.0, "depth-6 DP took " + format_double(secs) + "s");
  c.expect(tensor.q_mn == ex2.q_range(2, 6), "wrong window mass");
  double total = 0;
  for (int t1 = 1; t1 <= 7; ++t1) total += sums.mag(t1, 1);
  c.expect(total > 0.999 && total <= 1.0 + 1e-9,
           "depth-6 sigma magnitudes off: " + format_double(total));
  struct rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  c.expect(usage.ru_maxrss < 1024L * 1024L,
           "peak memory " + std::to_string(usage.ru_maxrss) + " KiB >= 1 GiB");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  run_criterion(1, "oracle equivalence on the toy corpus", criterion1, 10.0);
  run_criterion(2, "example-2 tower masses and bracket", criterion2, 60.0);
  run_criterion(3, "example-2 eigenvalue ladder and survey", criterion3,
                300.0);
  run_criterion(4, "cocycle laws of the model k-map", criterion4, 60.0);
  run_criterion(5, "Vershik exactness on the toy corpus", criterion5, 120.0);
  run_criterion(6, "seeded convergence test", criterion6, 60.0);
  run_criterion(7, "multi-measure I partitions", criterion7, 120.0);
  run_criterion(8, "survey cross-checks", criterion8, 300.0);
  run_criterion(9, "continuous classification", criterion9, 60.0);
  run_criterion(10, "depth-6 residue DP performance", criterion10, 60.0);
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}

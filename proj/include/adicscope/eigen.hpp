#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adicscope/diagram.hpp"
#include "adicscope/numeric.hpp"
#include "adicscope/residue.hpp"

namespace adicscope {

enum class CandidateStatus { kContinuous, kCandidate, kRejected, kUndecided };

std::string to_string(CandidateStatus s);

/// A rational rotation exp(2 pi i a/b) together with the per-level residues
/// p_n mod b and the stabilized quotient bb = b/(b, p_n). The candidate is a
/// continuous eigenvalue exactly when bb reaches 1; non-continuous candidates
/// must satisfy 1 < bb <= d.
struct EigenvalueCandidate {
  BigInt a = 1;
  BigInt b = 1;
  int max_level = 0;
  std::vector<BigInt> p_mod;  // p_n mod b for n = 1..max_level
  std::vector<BigInt> gcds;   // (b, p_n)
  int n0 = 0;                 // first level from which (b, p_n) is constant
  BigInt bb = 1;              // b/(b, p_{max_level})
  std::optional<BigInt> p;    // common residue p_n mod b for n >= 2, if constant
  CandidateStatus status = CandidateStatus::kUndecided;

  const BigInt& p_mod_at(int m) const {
    return p_mod[static_cast<std::size_t>(m - 1)];
  }
  /// Residue p required by the cocycle laws; throws when not constant.
  BigInt stable_p() const;
  long bb_long() const { return bb.convert_to<long>(); }
};

EigenvalueCandidate classify_candidate(const DiagramSpec& spec, const BigInt& a,
                                       const BigInt& b, int max_level);

/// Cut levels (starting at 1) on which p_n mod b shares one residue, found by
/// pigeonhole over levels 2..search_bound. Identity cut when already constant.
std::vector<int> stabilizing_telescope(const DiagramSpec& spec,
                                       const EigenvalueCandidate& cand,
                                       int search_bound);

struct Window {
  int m = 0, n = 0;
  auto operator<=>(const Window&) const = default;
};

/// {(m,n) : 2 <= m < n <= depth, n - m >= 2}, sorted lexicographically.
std::vector<Window> default_window_ladder(int depth);

std::vector<Window> parse_windows(const std::string& text);

/// Finite-depth proxies for the defining uniform limits. Echoed into
/// every report; never silent.
struct AcceptanceThresholds {
  double tau_accept = 0.05;   // D must fall below this on the late windows
  int last_windows = 3;       // how many late windows must satisfy tau_accept
  double monotone_slack = 1e-3;  // tolerated increase along the ladder
};

SigmaSums sigma_sums(const ResidueCountTensor& tensor,
                     const EigenvalueCandidate& cand);

struct DeficiencyWindow {
  int m = 0, n = 0;
  BigInt q_mn;
  std::vector<std::pair<int, double>> D;  // (t2, deficiency), t2 ascending

  struct PairGap {
    int t1 = 0, t2 = 0;
    double p_over_q = 0;      // P_{m,n}/q_{m,n}
    double mag_over_q = 0;    // |Sigma|/q_{m,n}
    double gap2 = 0;          // magnitude gap: P/q - |Sigma|/q
    double gap3 = 0;          // dominant-class gap: (P - N^{(k*)})/q
    long kstar = 0;           // dominant class mod bb
  };
  std::vector<PairGap> pairs;

  double D_of(int t2) const;
};

struct DeficiencyReport {
  EigenvalueCandidate candidate;
  bool source_all = true;        // sum over all vertices vs over I only
  std::vector<int> sources;      // the t1 summation set actually used
  std::vector<int> targets;      // the t2 set reported
  std::vector<DeficiencyWindow> windows;
};

/// Deficiency D(m,n,t2) = 1 - sum_{t1 in S} |Sigma(t1,t2)|/q_{m,n} over the
/// given windows, with per-pair gap diagnostics.
DeficiencyReport deficiency_table(const DiagramSpec& spec,
                                  const EigenvalueCandidate& cand,
                                  const std::vector<Window>& windows,
                                  bool source_all,
                                  const std::vector<int>& I = {});

struct AcceptanceVerdict {
  bool accepted = false;
  std::string reason;
  double worst_late_deficiency = 0.0;
};

/// Applies the finite-depth acceptance rule to a deficiency report: D below
/// tau_accept for every target on the last W windows, and non-increasing
/// (within the slack) between consecutive comparable windows of the ladder.
AcceptanceVerdict evaluate_acceptance(const DeficiencyReport& report,
                                      const AcceptanceThresholds& thresholds);

/// Dominant residue class per vertex pair, with its relative mass.
struct KMap {
  int m = 0, n = 0;
  BigInt b = 1;
  long bb = 1;
  std::vector<int> domain;  // target vertices covered

  struct Entry {
    long k = 0;               // argmax class mod bb, ties to the smallest k
    BigRat dominant_mass;     // N^{(k)} / P_{m,n}
    BigInt pair_total;        // P_{m,n}[t1][t2]
  };
  std::map<std::pair<int, int>, Entry> entries;  // (t1, t2) -> entry

  std::optional<Entry> at(int t1, int t2) const;
  std::optional<long> k_of(int t1, int t2) const;

  /// A table-defined k-map (model schemes, adversarial zero maps).
  static KMap from_table(int d, long bb, const BigInt& b,
                         const std::vector<std::vector<long>>& k_table);
};

KMap extract_kmap(const DiagramSpec& spec, const EigenvalueCandidate& cand,
                  int m, int n, const std::vector<int>& domain);

struct CocycleCheck {
  bool pass = true;
  struct Violation {
    int t1 = 0, t2 = 0, t3 = 0;  // t3 < 0 marks a pair law
    std::string law;
  };
  std::vector<Violation> violations;
};

/// Verifies p k(t1,t3) = p k(t1,t2) + p k(t2,t3), p k(t,t) = 0 and
/// p k(t1,t2) = -p k(t2,t1), all mod b, over I.
CocycleCheck cocycle_check(const KMap& kmap, const EigenvalueCandidate& cand,
                           const std::vector<int>& I);

struct PsiPartition {
  int m = 0, n = 0, t2 = 0;
  long bb = 1;
  std::vector<std::vector<int>> atoms;  // atoms[k] = Psi^{-1}(k)
  std::vector<int> unassigned;          // t1 with P_{m,n}[t1][t2] = 0
  bool onto = false;
  std::vector<double> atom_sums;        // sum over atom of |Sigma|/q
  std::vector<double> distance;         // |atom_sum - 1/bb|
};

PsiPartition psi_partition(const DiagramSpec& spec,
                           const EigenvalueCandidate& cand, int m, int n,
                           int t2, const std::vector<int>& domain);

struct DominantRoot {
  int index = 0;
  double weight = 0.0;
  double lower_bound = 0.0;  // 1 - C epsilon with C = N/(1 - cos(2 pi / N))
};

/// For a convex combination of N-th roots of unity whose sum has modulus
/// > 1 - epsilon, some coefficient exceeds 1 - C epsilon; returns it.
DominantRoot dominant_root(const std::vector<double>& weights, double epsilon);

struct EquidistributionReport {
  EigenvalueCandidate candidate;
  struct Cell {
    int m = 0, n = 0, t1 = 0, t2 = 0;
    double mag_over_q = 0;
    double distance = 0;  // from 1/d
  };
  std::vector<Cell> cells;
  struct TowerRow {
    int vertex = 0;
    double mass = 0;
    double distance = 0;  // from 1/d
  };
  std::vector<TowerRow> towers;  // at the largest window
};

/// bb = d regime: per-pair |Sigma|/q distances from 1/d, plus per-vertex
/// tower-mass distances from 1/d at the largest window.
EquidistributionReport equidistribution_check(
    const DiagramSpec& spec, const EigenvalueCandidate& cand,
    const std::vector<Window>& windows);

struct SurveyResult {
  struct CandidateRow {
    BigInt b;
    CandidateStatus status = CandidateStatus::kUndecided;
    BigInt bb = 1;
    bool accepted = false;
    std::string reason;
    double worst_late_deficiency = 0.0;
  };
  struct MeasureEntry {
    std::vector<int> I;
    std::vector<CandidateRow> rows;   // one per surveyed b
    std::vector<BigInt> accepted_bb;  // B_mu, deduplicated ascending
    BigInt b_mu = 0;                  // divisibility-maximal element, 0 if empty
    bool b_mu_unique = true;
  };
  std::vector<MeasureEntry> measures;
  int d = 0;
  BigInt sum_b_mu = 0;
  bool sum_bound_ok = true;    // sum of b_mu <= d
  BigInt count_bound_rhs = 0;  // d - sum (b_mu - 1)
  bool count_bound_ok = true;  // #hypotheses <= count_bound_rhs
  AcceptanceThresholds thresholds;
};

/// Denominator survey over b = 2..b_max (a = 1; powers of an accepted root
/// share its acceptance status) against each hypothesized I set.
SurveyResult survey(const DiagramSpec& spec, long b_max, int depth,
                    const std::vector<std::vector<int>>& measure_hypotheses,
                    const AcceptanceThresholds& thresholds = {});

}  // namespace adicscope

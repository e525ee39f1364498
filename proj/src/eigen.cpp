#include "adicscope/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "adicscope/errors.hpp"
#include "adicscope/measure.hpp"

namespace adicscope {

namespace {

// Residue tensors are only materialized for small denominators (the rank
// bound keeps bb <= d and reports use b <= 64); the guard keeps accidental
// huge-b requests from allocating.
constexpr long kMaxTensorModulus = 1 << 12;

long require_small_b(const BigInt& b, const std::string& op) {
  if (b > kMaxTensorModulus)
    throw AnalysisError(op + ": denominator " + b.str() +
                        " exceeds the residue-tensor modulus bound " +
                        std::to_string(kMaxTensorModulus));
  return b.convert_to<long>();
}

}  // namespace

std::string to_string(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::kContinuous: return "continuous";
    case CandidateStatus::kCandidate: return "candidate";
    case CandidateStatus::kRejected: return "rejected";
    case CandidateStatus::kUndecided: return "undecided";
  }
  return "?";
}

BigInt EigenvalueCandidate::stable_p() const {
  if (!p)
    throw AnalysisError(
        "candidate has no constant residue p_n mod b; apply "
        "stabilizing_telescope first");
  return *p;
}

EigenvalueCandidate classify_candidate(const DiagramSpec& spec, const BigInt& a,
                                       const BigInt& b, int max_level) {
  if (b < 1) throw AnalysisError("classify_candidate: b must be >= 1");
  if (gcd(mod_floor(a, b), b) != 1 && b > 1)
    throw AnalysisError("classify_candidate: gcd(a,b) must be 1");
  if (max_level < 2 || max_level > spec.depth())
    throw AnalysisError("classify_candidate: max_level out of range");
  spec.require_toeplitz("classify_candidate");

  EigenvalueCandidate cand;
  cand.a = a;
  cand.b = b;
  cand.max_level = max_level;
  BigInt r = mod_floor(1, b);  // p_1 = q_1 = 1
  for (int n = 1; n <= max_level; ++n) {
    if (n >= 2) r = mod_floor(r * spec.q(n), b);
    cand.p_mod.push_back(r);
    cand.gcds.push_back(r == 0 ? b : gcd(b, r));  // gcd(b, p_n), p_n = 0 mod b means b | p_n
  }
  const BigInt g_last = cand.gcds.back();
  cand.bb = b / g_last;
  cand.n0 = max_level;
  while (cand.n0 > 1 &&
         cand.gcds[static_cast<std::size_t>(cand.n0 - 2)] == g_last)
    --cand.n0;
  bool constant_p = max_level >= 2;
  for (int n = 3; n <= max_level; ++n)
    if (cand.p_mod[static_cast<std::size_t>(n - 1)] != cand.p_mod[1])
      constant_p = false;
  if (constant_p) cand.p = cand.p_mod[1];

  const bool continuous =
      std::any_of(cand.gcds.begin(), cand.gcds.end(),
                  [&](const BigInt& g) { return g == b; });
  // gcd growth is monotone, so "stabilized" means the last three computed
  // levels agree; later levels could still grow it, hence "undecided".
  const bool stabilized =
      max_level >= 3 &&
      cand.gcds[static_cast<std::size_t>(max_level - 3)] == g_last;
  if (continuous)
    cand.status = CandidateStatus::kContinuous;
  else if (!stabilized)
    cand.status = CandidateStatus::kUndecided;
  else if (cand.bb <= spec.rank())
    cand.status = CandidateStatus::kCandidate;
  else
    cand.status = CandidateStatus::kRejected;
  return cand;
}

std::vector<int> stabilizing_telescope(const DiagramSpec& spec,
                                       const EigenvalueCandidate& cand,
                                       int search_bound) {
  if (cand.status == CandidateStatus::kRejected)
    throw AnalysisError("stabilizing_telescope: candidate was rejected");
  const int hi = std::min({search_bound, spec.depth(), cand.max_level});
  if (hi < 2)
    throw AnalysisError("stabilizing_telescope: search bound below level 2");

  bool constant = true;
  for (int n = 3; n <= hi; ++n)
    if (cand.p_mod_at(n) != cand.p_mod_at(2)) constant = false;
  if (constant || cand.b == 1) {
    std::vector<int> cuts;
    for (int n = 1; n <= spec.depth(); ++n) cuts.push_back(n);
    return cuts;
  }

  // Pigeonhole over the <= b residues: keep the class with the most hits,
  // ties to the earliest first occurrence.
  std::map<BigInt, std::vector<int>> by_residue;
  for (int n = 2; n <= hi; ++n) by_residue[cand.p_mod_at(n)].push_back(n);
  const std::vector<int>* best = nullptr;
  for (const auto& [res, levels] : by_residue) {
    if (!best || levels.size() > best->size() ||
        (levels.size() == best->size() && levels.front() < best->front()))
      best = &levels;
  }
  if (!best || best->size() < 2) {
    std::ostringstream msg;
    msg << "stabilizing_telescope: no residue recurs within levels 2.." << hi
        << "; residues seen:";
    for (const auto& [res, levels] : by_residue)
      msg << " " << res.str() << "(x" << levels.size() << ")";
    throw AnalysisError(msg.str());
  }
  std::vector<int> cuts{1};
  cuts.insert(cuts.end(), best->begin(), best->end());
  return cuts;
}

std::vector<Window> default_window_ladder(int depth) {
  std::vector<Window> out;
  for (int m = 2; m < depth; ++m)
    for (int n = m + 2; n <= depth; ++n) out.push_back({m, n});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Window> parse_windows(const std::string& text) {
  std::vector<Window> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw InputError("window '" + item + "' is not of the form m:n");
    try {
      out.push_back({std::stoi(item.substr(0, colon)),
                     std::stoi(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw InputError("window '" + item + "' is not of the form m:n");
    }
  }
  if (out.empty()) throw InputError("empty window list");
  return out;
}

SigmaSums sigma_sums(const ResidueCountTensor& tensor,
                     const EigenvalueCandidate& cand) {
  if (tensor.m < 1 || tensor.m > cand.max_level)
    throw AnalysisError("sigma_sums: window start outside candidate context");
  return sigma_sums_raw(tensor, cand.a, cand.b, cand.p_mod_at(tensor.m));
}

double DeficiencyWindow::D_of(int t2) const {
  for (const auto& [t, v] : D)
    if (t == t2) return v;
  throw AnalysisError("deficiency window has no target " + std::to_string(t2));
}

DeficiencyReport deficiency_table(const DiagramSpec& spec,
                                  const EigenvalueCandidate& cand,
                                  const std::vector<Window>& windows,
                                  bool source_all, const std::vector<int>& I) {
  if (cand.status != CandidateStatus::kCandidate &&
      cand.status != CandidateStatus::kContinuous)
    throw AnalysisError("deficiency_table: candidate status is " +
                        to_string(cand.status));
  spec.require_toeplitz("deficiency_table");
  const long B = require_small_b(cand.b, "deficiency_table");
  const long bb = cand.bb_long();

  DeficiencyReport rep;
  rep.candidate = cand;
  rep.source_all = source_all;
  if (source_all) {
    for (int t = 1; t <= spec.rank(); ++t) rep.sources.push_back(t);
  } else {
    rep.sources = I;
    std::sort(rep.sources.begin(), rep.sources.end());
  }
  if (I.empty()) {
    for (int t = 1; t <= spec.rank(); ++t) rep.targets.push_back(t);
  } else {
    rep.targets = I;
    std::sort(rep.targets.begin(), rep.targets.end());
  }
  for (int t : rep.sources) spec.check_vertex(t);
  for (int t : rep.targets) spec.check_vertex(t);

  std::vector<Window> sorted = windows;
  std::sort(sorted.begin(), sorted.end());
  ResidueCalculator calc(spec, B);
  for (const Window& w : sorted) {
    spec.check_window(w.m, w.n);
    const ResidueCountTensor tensor = calc.window(w.m, w.n);
    const ResidueCountTensor folded = collapse_tensor(tensor, bb);
    const SigmaSums sums = sigma_sums(tensor, cand);

    DeficiencyWindow rec;
    rec.m = w.m;
    rec.n = w.n;
    rec.q_mn = tensor.q_mn;
    for (int t2 : rep.targets) {
      double total = 0;
      for (int t1 : rep.sources) total += sums.mag(t1, t2);
      rec.D.emplace_back(t2, 1.0 - total);
      for (int t1 = 1; t1 <= spec.rank(); ++t1) {
        DeficiencyWindow::PairGap g;
        g.t1 = t1;
        g.t2 = t2;
        const BigInt P = folded.pair_total(t1, t2);
        g.p_over_q = to_double(BigRat(P, tensor.q_mn));
        g.mag_over_q = sums.mag(t1, t2);
        g.gap2 = g.p_over_q - g.mag_over_q;
        BigInt best = -1;
        long kstar = 0;
        for (long k = 0; k < bb; ++k)
          if (folded.at(t1, t2, k) > best) {
            best = folded.at(t1, t2, k);
            kstar = k;
          }
        g.kstar = kstar;
        g.gap3 = to_double(BigRat(P - best, tensor.q_mn));
        rec.pairs.push_back(g);
      }
    }
    rep.windows.push_back(std::move(rec));
  }
  return rep;
}

AcceptanceVerdict evaluate_acceptance(const DeficiencyReport& report,
                                      const AcceptanceThresholds& thresholds) {
  AcceptanceVerdict verdict;
  if (report.windows.empty()) {
    verdict.reason = "no windows evaluated";
    return verdict;
  }
  // Trend: D may not grow by more than the slack between consecutive
  // windows of the ladder that are comparable componentwise. At exact
  // precision D can tick up by O(1/q) when the window gains a level, which
  // is why the slack exists.
  for (std::size_t i = 1; i < report.windows.size(); ++i) {
    const auto& prev = report.windows[i - 1];
    const auto& cur = report.windows[i];
    if (!(prev.m <= cur.m && prev.n <= cur.n)) continue;
    for (int t2 : report.targets) {
      if (cur.D_of(t2) > prev.D_of(t2) + thresholds.monotone_slack) {
        std::ostringstream msg;
        msg << "deficiency increases at t2=" << t2 << " between (" << prev.m
            << "," << prev.n << ") and (" << cur.m << "," << cur.n << ")";
        verdict.reason = msg.str();
        return verdict;
      }
    }
  }
  const std::size_t first_late =
      report.windows.size() > static_cast<std::size_t>(thresholds.last_windows)
          ? report.windows.size() - thresholds.last_windows
          : 0;
  double worst = 0;
  for (std::size_t i = first_late; i < report.windows.size(); ++i)
    for (const auto& [t2, v] : report.windows[i].D) worst = std::max(worst, v);
  verdict.worst_late_deficiency = worst;
  if (worst >= thresholds.tau_accept) {
    std::ostringstream msg;
    msg << "late-window deficiency " << format_double(worst) << " >= tau "
        << format_double(thresholds.tau_accept);
    verdict.reason = msg.str();
    return verdict;
  }
  verdict.accepted = true;
  verdict.reason = "accepted";
  return verdict;
}

std::optional<KMap::Entry> KMap::at(int t1, int t2) const {
  const auto it = entries.find({t1, t2});
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

std::optional<long> KMap::k_of(int t1, int t2) const {
  const auto e = at(t1, t2);
  if (!e) return std::nullopt;
  return e->k;
}

KMap KMap::from_table(int d, long bb, const BigInt& b,
                      const std::vector<std::vector<long>>& k_table) {
  KMap km;
  km.b = b;
  km.bb = bb;
  for (int t = 1; t <= d; ++t) km.domain.push_back(t);
  for (int t1 = 1; t1 <= d; ++t1)
    for (int t2 = 1; t2 <= d; ++t2) {
      Entry e;
      e.k = k_table[static_cast<std::size_t>(t1 - 1)]
                   [static_cast<std::size_t>(t2 - 1)];
      e.dominant_mass = 1;
      e.pair_total = 0;
      km.entries[{t1, t2}] = e;
    }
  return km;
}

KMap extract_kmap(const DiagramSpec& spec, const EigenvalueCandidate& cand,
                  int m, int n, const std::vector<int>& domain) {
  spec.check_window(m, n);
  if (cand.status == CandidateStatus::kRejected ||
      cand.status == CandidateStatus::kUndecided)
    throw AnalysisError("extract_kmap: candidate status is " +
                        to_string(cand.status));
  const long B = require_small_b(cand.b, "extract_kmap");
  const long bb = cand.bb_long();

  std::vector<int> t2s = domain;
  if (t2s.empty())
    for (int t = 1; t <= spec.rank(); ++t) t2s.push_back(t);
  std::sort(t2s.begin(), t2s.end());
  for (int t : t2s) spec.check_vertex(t);

  const ResidueCountTensor folded =
      collapse_tensor(range_residue_counts(spec, m, n, B), bb);
  KMap km;
  km.m = m;
  km.n = n;
  km.b = cand.b;
  km.bb = bb;
  km.domain = t2s;
  for (int t2 : t2s)
    for (int t1 = 1; t1 <= spec.rank(); ++t1) {
      const BigInt P = folded.pair_total(t1, t2);
      if (P == 0) continue;  // k undefined for this pair, recorded as absent
      BigInt best = -1;
      long kstar = 0;
      for (long k = 0; k < bb; ++k)
        if (folded.at(t1, t2, k) > best) {
          best = folded.at(t1, t2, k);
          kstar = k;
        }
      KMap::Entry e;
      e.k = kstar;
      e.dominant_mass = BigRat(best, P);
      e.pair_total = P;
      km.entries[{t1, t2}] = e;
    }
  return km;
}

CocycleCheck cocycle_check(const KMap& kmap, const EigenvalueCandidate& cand,
                           const std::vector<int>& I) {
  const BigInt p = cand.stable_p();
  const BigInt& b = cand.b;
  const auto k_of = [&](int t1, int t2) -> long {
    const auto k = kmap.k_of(t1, t2);
    if (!k)
      throw AnalysisError("cocycle_check: k undefined for pair (" +
                          std::to_string(t1) + "," + std::to_string(t2) + ")");
    return *k;
  };

  CocycleCheck out;
  for (int t : I) {
    if (mod_floor(p * k_of(t, t), b) != 0) {
      out.pass = false;
      out.violations.push_back({t, t, -1, "p*k(t,t) != 0 mod b"});
    }
  }
  for (int t1 : I)
    for (int t2 : I) {
      if (mod_floor(p * k_of(t1, t2) + p * k_of(t2, t1), b) != 0) {
        out.pass = false;
        out.violations.push_back(
            {t1, t2, -1, "p*k(t1,t2) != -p*k(t2,t1) mod b"});
      }
      for (int t3 : I) {
        const BigInt lhs = p * k_of(t1, t3);
        const BigInt rhs = p * (k_of(t1, t2) + k_of(t2, t3));
        if (mod_floor(lhs - rhs, b) != 0) {
          out.pass = false;
          out.violations.push_back(
              {t1, t2, t3, "p*k(t1,t3) != p*k(t1,t2) + p*k(t2,t3) mod b"});
        }
      }
    }
  return out;
}

PsiPartition psi_partition(const DiagramSpec& spec,
                           const EigenvalueCandidate& cand, int m, int n,
                           int t2, const std::vector<int>& domain) {
  spec.check_vertex(t2);
  std::vector<int> dom = domain;
  if (dom.empty())
    for (int t = 1; t <= spec.rank(); ++t) dom.push_back(t);
  std::sort(dom.begin(), dom.end());

  const KMap km = extract_kmap(spec, cand, m, n, {t2});
  const long B = require_small_b(cand.b, "psi_partition");
  const SigmaSums sums =
      sigma_sums(range_residue_counts(spec, m, n, B), cand);

  PsiPartition part;
  part.m = m;
  part.n = n;
  part.t2 = t2;
  part.bb = cand.bb_long();
  part.atoms.assign(static_cast<std::size_t>(part.bb), {});
  part.atom_sums.assign(static_cast<std::size_t>(part.bb), 0.0);
  part.distance.assign(static_cast<std::size_t>(part.bb), 0.0);
  for (int t1 : dom) {
    const auto k = km.k_of(t1, t2);
    if (!k) {
      part.unassigned.push_back(t1);
      continue;
    }
    part.atoms[static_cast<std::size_t>(*k)].push_back(t1);
    part.atom_sums[static_cast<std::size_t>(*k)] += sums.mag(t1, t2);
  }
  part.onto = true;
  for (long k = 0; k < part.bb; ++k) {
    if (part.atoms[static_cast<std::size_t>(k)].empty()) part.onto = false;
    part.distance[static_cast<std::size_t>(k)] =
        std::abs(part.atom_sums[static_cast<std::size_t>(k)] -
                 1.0 / static_cast<double>(part.bb));
  }
  return part;
}

DominantRoot dominant_root(const std::vector<double>& weights, double epsilon) {
  const int N = static_cast<int>(weights.size());
  if (N < 1) throw AnalysisError("dominant_root: empty weight vector");
  double total = 0;
  for (double w : weights) {
    if (w < 0) throw AnalysisError("dominant_root: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw AnalysisError("dominant_root: weights do not sum to 1");

  DominantRoot out;
  if (N == 1) {
    out.index = 0;
    out.weight = weights[0];
    out.lower_bound = 1.0;
    return out;
  }
  Complex z(0, 0);
  for (int j = 0; j < N; ++j) {
    const double ang = 2.0 * M_PI * j / N;
    z += weights[static_cast<std::size_t>(j)] *
         Complex(std::cos(ang), std::sin(ang));
  }
  if (std::abs(z) <= 1.0 - epsilon)
    throw AnalysisError("dominant_root: |sum| = " + format_double(std::abs(z)) +
                        " <= 1 - epsilon; hypothesis violated");
  const double C = N / (1.0 - std::cos(2.0 * M_PI / N));
  out.index = static_cast<int>(
      std::max_element(weights.begin(), weights.end()) - weights.begin());
  out.weight = weights[static_cast<std::size_t>(out.index)];
  out.lower_bound = 1.0 - C * epsilon;
  return out;
}

EquidistributionReport equidistribution_check(
    const DiagramSpec& spec, const EigenvalueCandidate& cand,
    const std::vector<Window>& windows) {
  if (cand.bb != spec.rank())
    throw AnalysisError("equidistribution_check: requires bb = d, got bb = " +
                        cand.bb.str());
  const long B = require_small_b(cand.b, "equidistribution_check");
  const double inv_d = 1.0 / spec.rank();

  EquidistributionReport rep;
  rep.candidate = cand;
  std::vector<Window> sorted = windows;
  std::sort(sorted.begin(), sorted.end());
  ResidueCalculator calc(spec, B);
  for (const Window& w : sorted) {
    const SigmaSums sums = sigma_sums(calc.window(w.m, w.n), cand);
    for (int t1 = 1; t1 <= spec.rank(); ++t1)
      for (int t2 = 1; t2 <= spec.rank(); ++t2) {
        EquidistributionReport::Cell cell;
        cell.m = w.m;
        cell.n = w.n;
        cell.t1 = t1;
        cell.t2 = t2;
        cell.mag_over_q = sums.mag(t1, t2);
        cell.distance = std::abs(cell.mag_over_q - inv_d);
        rep.cells.push_back(cell);
      }
  }
  const Window& last = sorted.back();
  const MeasureVector mv = measure_estimate(spec, last.m, last.n,
                                            uniform_seed(spec.rank()));
  for (int t = 1; t <= spec.rank(); ++t) {
    EquidistributionReport::TowerRow row;
    row.vertex = t;
    row.mass = to_double(mv.tower_mass(t));
    row.distance = std::abs(row.mass - inv_d);
    rep.towers.push_back(row);
  }
  return rep;
}

namespace {

bool divides(const BigInt& a, const BigInt& b) { return b % a == 0; }

}  // namespace

SurveyResult survey(const DiagramSpec& spec, long b_max, int depth,
                    const std::vector<std::vector<int>>& measure_hypotheses,
                    const AcceptanceThresholds& thresholds) {
  if (b_max < 2) throw AnalysisError("survey: b_max must be >= 2");
  if (depth < 4 || depth > spec.depth())
    throw AnalysisError("survey: need 4 <= depth <= spec depth");
  spec.require_toeplitz("survey");

  SurveyResult result;
  result.d = spec.rank();
  result.thresholds = thresholds;
  const std::vector<Window> ladder = default_window_ladder(depth);

  for (const auto& hyp : measure_hypotheses) {
    SurveyResult::MeasureEntry entry;
    entry.I = hyp;
    std::sort(entry.I.begin(), entry.I.end());
    for (int t : entry.I) spec.check_vertex(t);

    std::set<BigInt> accepted_bb;
    for (long b = 2; b <= b_max; ++b) {
      SurveyResult::CandidateRow row;
      row.b = b;
      const EigenvalueCandidate cand =
          classify_candidate(spec, 1, b, depth);
      row.status = cand.status;
      row.bb = cand.bb;
      if (cand.status == CandidateStatus::kContinuous) {
        row.reason = "continuous eigenvalue (b divides p_n)";
      } else if (cand.status == CandidateStatus::kRejected) {
        row.reason = "bb > d (rank filter)";
      } else if (cand.status == CandidateStatus::kUndecided) {
        row.reason = "gcd(b, p_n) still growing at max depth";
      } else if (cand.bb > static_cast<long>(entry.I.size())) {
        row.reason = "bb > #I";
      } else {
        const DeficiencyReport rep =
            deficiency_table(spec, cand, ladder, /*source_all=*/false, entry.I);
        const AcceptanceVerdict verdict = evaluate_acceptance(rep, thresholds);
        row.accepted = verdict.accepted;
        row.reason = verdict.reason;
        row.worst_late_deficiency = verdict.worst_late_deficiency;
        if (verdict.accepted) accepted_bb.insert(cand.bb);
      }
      entry.rows.push_back(std::move(row));
    }

    entry.accepted_bb.assign(accepted_bb.begin(), accepted_bb.end());
    std::vector<BigInt> maximal;
    for (const BigInt& x : entry.accepted_bb) {
      bool dominated = false;
      for (const BigInt& y : entry.accepted_bb)
        if (x != y && divides(x, y)) dominated = true;
      if (!dominated) maximal.push_back(x);
    }
    if (!maximal.empty()) {
      entry.b_mu = *std::max_element(maximal.begin(), maximal.end());
      entry.b_mu_unique = maximal.size() == 1;
    }
    result.measures.push_back(std::move(entry));
  }

  BigInt penalty = 0;
  for (const auto& entry : result.measures) {
    if (entry.b_mu != 0) {
      result.sum_b_mu += entry.b_mu;
      penalty += entry.b_mu - 1;
    }
  }
  result.sum_bound_ok = result.sum_b_mu <= result.d;
  result.count_bound_rhs = BigInt(result.d) - penalty;
  result.count_bound_ok =
      BigInt(static_cast<long>(result.measures.size())) <=
      result.count_bound_rhs;
  return result;
}

}  // namespace adicscope

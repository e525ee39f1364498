// adicscope: build or load Toeplitz-type Bratteli-Vershik diagrams and run
// the exact combinatorial analyses on them. Every report is deterministic
// for a fixed command line and seed; see README for the format.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adicscope/diagram.hpp"
#include "adicscope/diagram_io.hpp"
#include "adicscope/eigen.hpp"
#include "adicscope/errors.hpp"
#include "adicscope/examples.hpp"
#include "adicscope/measure.hpp"
#include "adicscope/report.hpp"
#include "adicscope/vershik.hpp"

namespace {

using namespace adicscope;

struct CommonOpts {
  std::string file;
  int example = 0;
  int depth = 5;
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--file", o.file, "diagram file to load");
  cmd->add_option("--example", o.example, "bundled example id (1..6)")
      ->check(CLI::Range(1, 6));
  cmd->add_option("--depth", o.depth, "levels to build for --example")
      ->check(CLI::Range(3, 9));
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output path (default stdout)");
}

DiagramSpec load_spec(const CommonOpts& o) {
  if (!o.file.empty() && o.example != 0)
    throw InputError("choose exactly one input: --file or --example");
  if (!o.file.empty()) return parse_spec_file(o.file);
  if (o.example != 0) return build_example(o.example, o.depth).first;
  throw InputError("no input: pass --file <path> or --example <id>");
}

void echo_input(Report& rep, const CommonOpts& o) {
  if (!o.file.empty())
    rep.header("input", o.file);
  else
    rep.header("input", "example " + std::to_string(o.example) + " depth " +
                            std::to_string(o.depth));
}

std::vector<int> parse_vertex_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw InputError("bad vertex '" + tok + "' in list");
    }
  }
  if (out.empty()) throw InputError("empty vertex list");
  return out;
}

std::string join_ints(const std::vector<int>& v, char sep = ' ') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::string window_text(const std::vector<Window>& ws) {
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ws[i].m) + ":" + std::to_string(ws[i].n);
  }
  return s;
}

// ---------------------------------------------------------------- validate

int run_validate(const CommonOpts& o) {
  const DiagramSpec spec = load_spec(o);
  const PropernessReport rep = validate_properness(spec);
  Report r("validate");
  echo_input(r, o);
  r.header("rank", static_cast<long>(spec.rank()));
  r.header("depth", static_cast<long>(spec.depth()));
  r.header("toeplitz", spec.toeplitz() ? "true" : "false");
  r.header("h1_ok", rep.h1_ok ? "true" : "false");
  r.header("h2_ok", rep.h2_ok ? "true" : "false");
  r.header("h3_ok", rep.h3_ok ? "true" : "false");
  r.header("h4_ok", rep.h4_ok ? "true" : "false");
  r.header("unique_min_ok", rep.unique_min_ok ? "true" : "false");
  r.columns({"level", "h2_ok", "h4_ok", "min_ok", "first_letters",
             "last_letters", "missing_pairs"});
  for (const auto& det : rep.levels) {
    std::string missing;
    for (const auto& [t, u] : det.missing)
      missing += "(" + std::to_string(t) + ":" + std::to_string(u) + ")";
    r.row({std::to_string(det.level), det.h2_ok ? "true" : "false",
           det.h4_ok ? "true" : "false", det.min_ok ? "true" : "false",
           join_ints(det.first_letters, ';'), join_ints(det.last_letters, ';'),
           missing});
  }
  emit_report(r, o.format, o.out);
  return rep.all_ok() ? 0 : 1;
}

// ---------------------------------------------------------------- matrices

int run_matrices(const CommonOpts& o, int level, int m, int n) {
  const DiagramSpec spec = load_spec(o);
  Report r("matrices");
  echo_input(r, o);
  IntMatrix mat;
  if (level > 0) {
    mat = incidence_matrix(spec, level);
    r.header("matrix", "M_" + std::to_string(level));
  } else {
    if (m <= 0 || n <= 0)
      throw InputError("pass --level n, or both --m and --n");
    mat = product_matrix(spec, m, n);
    r.header("matrix", "P_" + std::to_string(m) + "," + std::to_string(n));
  }
  r.columns({"t1", "t2", "count"});
  for (int t1 = 1; t1 <= spec.rank(); ++t1)
    for (int t2 = 1; t2 <= spec.rank(); ++t2)
      r.row({std::to_string(t1), std::to_string(t2), mat.at(t1, t2).str()});
  emit_report(r, o.format, o.out);
  return 0;
}

// ------------------------------------------------------------------- words

int run_words(const CommonOpts& o, int m, int n, int t, bool expand) {
  const DiagramSpec spec = load_spec(o);
  const OrderWord w = compose_words(spec, m, n, t);
  Report r("words");
  echo_input(r, o);
  r.header("window", std::to_string(m) + ":" + std::to_string(n));
  r.header("vertex", static_cast<long>(t));
  r.header("length", w.length());
  if (expand) {
    r.columns({"position", "letter"});
    const auto letters = w.expand(default_expand_limit());
    for (std::size_t j = 0; j < letters.size(); ++j)
      r.row({std::to_string(j + 1), std::to_string(letters[j])});
  } else {
    r.columns({"block", "letters", "repeat"});
    long i = 0;
    for (const auto& b : w.blocks())
      r.row({std::to_string(++i), join_ints(b.letters, ';'), b.repeat.str()});
  }
  emit_report(r, o.format, o.out);
  return 0;
}

// ---------------------------------------------------------------- measures

int run_measures(const CommonOpts& o, int m, bool trajectories) {
  const DiagramSpec spec = load_spec(o);
  const int n = spec.depth();
  if (m <= 0) m = 2;
  Report r("measures");
  echo_input(r, o);
  r.header("level", static_cast<long>(m));
  r.header("deepest", static_cast<long>(n));
  r.header("simplex_diameter", rational_string(simplex_diameter(spec, m, n)));
  if (trajectories) {
    // Interval of tower masses over all deepest-level point seeds.
    const TowerMassTable table = tower_mass_limit_table(spec, n);
    r.columns({"level", "vertex", "mass_lo", "mass_hi"});
    for (const auto& row : table.rows)
      r.row({std::to_string(row.level), std::to_string(row.vertex),
             rational_string(row.lo), rational_string(row.hi)});
    emit_report(r, o.format, o.out);
    return 0;
  }
  r.columns({"seed", "vertex", "base_mass", "tower_mass"});
  const MeasureVector uni =
      measure_estimate(spec, m, n, uniform_seed(spec.rank()));
  for (int t = 1; t <= spec.rank(); ++t)
    r.row({"uniform", std::to_string(t),
           rational_string(uni.base[static_cast<std::size_t>(t - 1)]),
           rational_string(uni.tower_mass(t))});
  for (int t2 = 1; t2 <= spec.rank(); ++t2) {
    const MeasureVector mv = point_mass_estimate(spec, m, n, t2);
    for (int t = 1; t <= spec.rank(); ++t)
      r.row({"point:" + std::to_string(t2), std::to_string(t),
             rational_string(mv.base[static_cast<std::size_t>(t - 1)]),
             rational_string(mv.tower_mass(t))});
  }
  emit_report(r, o.format, o.out);
  return 0;
}

// ------------------------------------------------------------------- clean

int run_clean(const CommonOpts& o, double delta, double tol) {
  const DiagramSpec spec = load_spec(o);
  const CleanlinessReport rep =
      cleanliness_classify(spec, spec.depth(), delta, tol);
  Report r("clean");
  echo_input(r, o);
  r.header("delta", delta);
  r.header("cluster_tol", tol);
  r.header("groups", static_cast<long>(rep.groups.size()));
  r.header("exact_finite_rank", rep.exact_finite_rank ? "true" : "false");
  r.columns({"group", "seeds", "I", "level", "vertex", "tower_mass"});
  nlohmann::ordered_json jgroups = nlohmann::ordered_json::array();
  for (std::size_t g = 0; g < rep.groups.size(); ++g) {
    const auto& grp = rep.groups[g];
    nlohmann::ordered_json jg;
    jg["seeds"] = grp.seeds;
    jg["I"] = grp.I;
    nlohmann::ordered_json jtraj = nlohmann::ordered_json::array();
    for (std::size_t li = 0; li < grp.trajectory.size(); ++li) {
      nlohmann::ordered_json jlev;
      jlev["level"] = li + 2;
      nlohmann::ordered_json jmass = nlohmann::ordered_json::array();
      for (const auto& v : grp.trajectory[li]) jmass.push_back(rational_string(v));
      jlev["tower_mass"] = jmass;
      jtraj.push_back(jlev);
    }
    jg["trajectory"] = jtraj;
    for (std::size_t li = 0; li < grp.trajectory.size(); ++li)
      for (int t = 1; t <= spec.rank(); ++t)
        r.row({std::to_string(g + 1), join_ints(grp.seeds, ';'),
               join_ints(grp.I, ';'), std::to_string(li + 2),
               std::to_string(t),
               rational_string(
                   grp.trajectory[li][static_cast<std::size_t>(t - 1)])});
    jgroups.push_back(jg);
  }
  r.payload()["groups"] = jgroups;
  r.payload()["vanishing"] = rep.vanishing;
  r.payload()["vanishing_monotone"] = rep.vanishing_monotone;
  r.payload()["exact_finite_rank"] = rep.exact_finite_rank;
  emit_report(r, o.format, o.out);
  return 0;
}

// ------------------------------------------------------------------- eigen

void echo_candidate(Report& r, const EigenvalueCandidate& c) {
  r.header("a", c.a);
  r.header("b", c.b);
  r.header("bb", c.bb);
  r.header("status", to_string(c.status));
  if (c.p) r.header("p", *c.p);
  std::string residues;
  for (std::size_t i = 0; i < c.p_mod.size(); ++i)
    residues += (i ? " " : "") + c.p_mod[i].str();
  r.header("p_mod_b", residues);
}

int run_eigen(const CommonOpts& o, long b, long a, const std::string& I_text,
              const std::string& windows_text, const std::string& source_mode,
              const AcceptanceThresholds& thresholds, bool emit_gaps) {
  const DiagramSpec spec = load_spec(o);
  const EigenvalueCandidate cand = classify_candidate(spec, a, b, spec.depth());

  Report r("eigen");
  echo_input(r, o);
  echo_candidate(r, cand);
  r.header("tau_accept", thresholds.tau_accept);
  r.header("last_windows", static_cast<long>(thresholds.last_windows));
  r.header("monotone_slack", thresholds.monotone_slack);

  if (cand.status == CandidateStatus::kContinuous) {
    r.header("verdict", "continuous eigenvalue (b divides p_n)");
    emit_report(r, o.format, o.out);
    return 0;
  }
  if (cand.status != CandidateStatus::kCandidate) {
    r.header("verdict", "not a candidate: " + to_string(cand.status));
    emit_report(r, o.format, o.out);
    return 1;
  }

  std::vector<int> I;
  if (!I_text.empty()) I = parse_vertex_list(I_text);
  if (!I.empty() && cand.bb > static_cast<long>(I.size())) {
    r.header("verdict", "rejected: bb = " + cand.bb.str() + " > #I = " +
                            std::to_string(I.size()));
    emit_report(r, o.format, o.out);
    return 1;
  }

  const std::vector<Window> windows = windows_text.empty()
                                          ? default_window_ladder(spec.depth())
                                          : parse_windows(windows_text);
  const bool source_all = source_mode == "all" || I.empty();
  const DeficiencyReport rep =
      deficiency_table(spec, cand, windows, source_all, I);
  const AcceptanceVerdict verdict = evaluate_acceptance(rep, thresholds);

  r.header("windows", window_text(windows));
  r.header("source_mode", source_all ? "all" : "I");
  if (!I.empty()) r.header("I", join_ints(I, ';'));
  r.header("accepted", verdict.accepted ? "true" : "false");
  r.header("verdict", verdict.reason);
  r.header("worst_late_deficiency", verdict.worst_late_deficiency);

  nlohmann::ordered_json jwin = nlohmann::ordered_json::array();
  if (emit_gaps) {
    r.columns({"m", "n", "t1", "t2", "p_over_q", "mag_over_q", "gap2", "gap3",
               "kstar"});
  } else {
    r.columns({"m", "n", "t2", "D"});
  }
  for (const auto& w : rep.windows) {
    nlohmann::ordered_json jw;
    jw["m"] = w.m;
    jw["n"] = w.n;
    nlohmann::ordered_json jD = nlohmann::ordered_json::array();
    for (const auto& [wt2, D] : w.D) {
      if (!emit_gaps)
        r.row({std::to_string(w.m), std::to_string(w.n), std::to_string(wt2),
               format_double(D)});
      jD.push_back({{"t2", wt2}, {"D", format_double(D)}});
    }
    if (emit_gaps)
      for (const auto& g : w.pairs)
        r.row({std::to_string(w.m), std::to_string(w.n), std::to_string(g.t1),
               std::to_string(g.t2), format_double(g.p_over_q),
               format_double(g.mag_over_q), format_double(g.gap2),
               format_double(g.gap3), std::to_string(g.kstar)});
    jw["D"] = jD;
    jwin.push_back(jw);
  }
  r.payload()["windows"] = jwin;
  r.payload()["accepted"] = verdict.accepted;
  r.payload()["reason"] = verdict.reason;
  emit_report(r, o.format, o.out);
  return verdict.accepted ? 0 : 1;
}

// -------------------------------------------------------------------- kmap

int run_kmap(const CommonOpts& o, long b, long a, int m, int n,
             const std::string& I_text, const std::string& dump_path) {
  const DiagramSpec spec = load_spec(o);
  const EigenvalueCandidate cand = classify_candidate(spec, a, b, spec.depth());
  std::vector<int> domain;
  if (!I_text.empty()) domain = parse_vertex_list(I_text);
  if (!dump_path.empty()) {
    std::ofstream f(dump_path);
    if (!f) throw InputError("cannot open tensor dump '" + dump_path + "'");
    dump_tensor_csv(range_residue_counts(spec, m, n, b), f);
  }
  const KMap km = extract_kmap(spec, cand, m, n, domain);
  Report r("kmap");
  echo_input(r, o);
  echo_candidate(r, cand);
  r.header("window", std::to_string(m) + ":" + std::to_string(n));
  r.columns({"t1", "t2", "k", "dominant_mass", "pair_total"});
  for (const auto& [pair, e] : km.entries)
    r.row({std::to_string(pair.first), std::to_string(pair.second),
           std::to_string(e.k), rational_string(e.dominant_mass),
           e.pair_total.str()});
  emit_report(r, o.format, o.out);
  return 0;
}

// ----------------------------------------------------------------- cocycle

int run_cocycle(const CommonOpts& o, long b, long a, int m, int n,
                const std::string& I_text) {
  const DiagramSpec spec = load_spec(o);
  const EigenvalueCandidate cand = classify_candidate(spec, a, b, spec.depth());
  std::vector<int> domain = I_text.empty() ? std::vector<int>{}
                                           : parse_vertex_list(I_text);
  if (domain.empty())
    for (int v = 1; v <= spec.rank(); ++v) domain.push_back(v);
  const KMap km = extract_kmap(spec, cand, m, n, domain);
  const CocycleCheck res = cocycle_check(km, cand, domain);
  Report r("cocycle");
  echo_input(r, o);
  echo_candidate(r, cand);
  r.header("window", std::to_string(m) + ":" + std::to_string(n));
  r.header("I", join_ints(domain, ';'));
  r.header("pass", res.pass ? "true" : "false");
  r.columns({"t1", "t2", "t3", "law"});
  for (const auto& v : res.violations)
    r.row({std::to_string(v.t1), std::to_string(v.t2),
           v.t3 < 0 ? "-" : std::to_string(v.t3), v.law});
  emit_report(r, o.format, o.out);
  return res.pass ? 0 : 1;
}

// --------------------------------------------------------------------- psi

int run_psi(const CommonOpts& o, long b, long a, int m, int n, int t2,
            const std::string& I_text) {
  const DiagramSpec spec = load_spec(o);
  const EigenvalueCandidate cand = classify_candidate(spec, a, b, spec.depth());
  std::vector<int> domain;
  if (!I_text.empty()) domain = parse_vertex_list(I_text);
  const PsiPartition part = psi_partition(spec, cand, m, n, t2, domain);
  Report r("psi");
  echo_input(r, o);
  echo_candidate(r, cand);
  r.header("window", std::to_string(m) + ":" + std::to_string(n));
  r.header("t2", static_cast<long>(t2));
  r.header("onto", part.onto ? "true" : "false");
  if (!part.unassigned.empty())
    r.header("unassigned", join_ints(part.unassigned, ';'));
  r.columns({"k", "atom", "atom_sum", "distance_from_1_over_bb"});
  for (std::size_t k = 0; k < part.atoms.size(); ++k)
    r.row({std::to_string(k), join_ints(part.atoms[k], ';'),
           format_double(part.atom_sums[k]), format_double(part.distance[k])});
  emit_report(r, o.format, o.out);
  return 0;
}

// ------------------------------------------------------------------ survey

int run_survey(const CommonOpts& o, long b_max, const std::string& sets_text,
               double delta, const AcceptanceThresholds& thresholds) {
  const DiagramSpec spec = load_spec(o);
  std::vector<std::vector<int>> hypotheses;
  if (sets_text == "auto" || sets_text.empty()) {
    const auto clean = cleanliness_classify(spec, spec.depth(), delta);
    for (const auto& g : clean.groups)
      if (!g.I.empty()) hypotheses.push_back(g.I);
  } else {
    std::stringstream ss(sets_text);
    std::string item;
    while (std::getline(ss, item, ';'))
      hypotheses.push_back(parse_vertex_list(item));
  }
  if (hypotheses.empty()) throw AnalysisError("survey: no I hypotheses");

  const SurveyResult res =
      survey(spec, b_max, spec.depth(), hypotheses, thresholds);
  Report r("survey");
  echo_input(r, o);
  r.header("b_max", b_max);
  r.header("tau_accept", thresholds.tau_accept);
  r.header("last_windows", static_cast<long>(thresholds.last_windows));
  r.header("monotone_slack", thresholds.monotone_slack);
  r.header("sum_b_mu", res.sum_b_mu);
  r.header("sum_bound_ok", res.sum_bound_ok ? "true" : "false");
  r.header("count_bound_rhs", res.count_bound_rhs);
  r.header("count_bound_ok", res.count_bound_ok ? "true" : "false");
  r.columns({"I", "b", "status", "bb", "accepted", "reason",
             "worst_late_deficiency"});
  nlohmann::ordered_json jm = nlohmann::ordered_json::array();
  for (const auto& entry : res.measures) {
    nlohmann::ordered_json je;
    je["I"] = entry.I;
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    for (const auto& row : entry.rows) {
      r.row({join_ints(entry.I, ';'), row.b.str(), to_string(row.status),
             row.bb.str(), row.accepted ? "true" : "false", row.reason,
             format_double(row.worst_late_deficiency)});
      jrows.push_back({{"b", row.b.str()},
                       {"status", to_string(row.status)},
                       {"bb", row.bb.str()},
                       {"accepted", row.accepted},
                       {"reason", row.reason}});
    }
    je["candidates"] = jrows;
    nlohmann::ordered_json jbb = nlohmann::ordered_json::array();
    for (const auto& v : entry.accepted_bb) jbb.push_back(v.str());
    je["B_mu"] = jbb;
    je["b_mu"] = entry.b_mu.str();
    je["b_mu_unique"] = entry.b_mu_unique;
    jm.push_back(je);
  }
  r.payload()["measures"] = jm;
  r.payload()["sum_b_mu"] = res.sum_b_mu.str();
  r.payload()["sum_bound_ok"] = res.sum_bound_ok;
  r.payload()["count_bound_rhs"] = res.count_bound_rhs.str();
  r.payload()["count_bound_ok"] = res.count_bound_ok;
  emit_report(r, o.format, o.out);
  return 0;
}

// ------------------------------------------------------------------- orbit

int run_orbit(const CommonOpts& o, int t, long steps, const std::string& start,
              int m, const std::string& track_text) {
  const DiagramSpec spec = load_spec(o);
  const int N = spec.depth();
  std::vector<long> tracked;
  if (!track_text.empty())
    for (int tb : parse_vertex_list(track_text)) tracked.push_back(tb);
  PathPoint x = start == "max" ? max_path(spec, N, t) : min_path(spec, N, t);

  Report r("orbit");
  echo_input(r, o);
  r.header("target", static_cast<long>(t));
  r.header("start", start);
  r.header("level", static_cast<long>(m));
  r.header("steps", steps);
  std::vector<std::string> cols{"step", "vertex_m", "r_m"};
  for (long tb : tracked) cols.push_back("r_m_mod_" + std::to_string(tb));
  r.columns(cols);
  for (long s = 0; s <= steps; ++s) {
    std::vector<std::string> row{std::to_string(s),
                                 std::to_string(x.vertex_at(m)),
                                 entrance_time(spec, x, m).str()};
    for (long tb : tracked)
      row.push_back(entrance_time_mod(spec, x, m, tb).str());
    r.row(std::move(row));
    if (s < steps) x = successor(spec, x, /*wrap=*/true);
  }
  emit_report(r, o.format, o.out);
  return 0;
}

// ---------------------------------------------------------------- converge

int run_converge(const CommonOpts& o, long b, long a, int t0, int samples,
                 std::uint64_t seed, const std::string& kmap_mode, int km_m,
                 int km_n) {
  const DiagramSpec spec = load_spec(o);
  const EigenvalueCandidate cand = classify_candidate(spec, a, b, spec.depth());
  KMap km;
  if (kmap_mode == "model") {
    km = model_kmap();
    km.b = cand.b;
    km.bb = cand.bb_long();
  } else if (kmap_mode == "zero") {
    km = KMap::from_table(
        spec.rank(), cand.bb_long(), cand.b,
        std::vector<std::vector<long>>(
            static_cast<std::size_t>(spec.rank()),
            std::vector<long>(static_cast<std::size_t>(spec.rank()), 0)));
  } else {
    if (km_n <= 0) km_n = spec.depth();
    km = extract_kmap(spec, cand, km_m, km_n, {});
  }
  const ConvergenceReport rep =
      convergence_test(spec, cand, km, t0, samples, spec.depth(), seed);

  Report r("converge");
  echo_input(r, o);
  echo_candidate(r, cand);
  r.header("kmap", kmap_mode);
  r.header("t0", static_cast<long>(t0));
  r.header("samples", static_cast<long>(samples));
  r.header("seed", static_cast<long>(seed));
  r.header("stabilize_from", static_cast<long>(rep.stabilize_from));
  r.header("stabilized_fraction", rep.fraction);
  r.header("missing_kmap", static_cast<long>(rep.missing_kmap));
  r.columns({"last_change_level", "samples"});
  for (std::size_t lev = 0; lev < rep.last_change_histogram.size(); ++lev)
    if (lev == 0 || lev >= 2)
      r.row({lev == 0 ? "never" : std::to_string(lev),
             std::to_string(rep.last_change_histogram[lev])});
  r.payload()["fraction"] = rep.fraction;
  r.payload()["histogram"] = rep.last_change_histogram;
  emit_report(r, o.format, o.out);
  return 0;
}

// ----------------------------------------------------------------- example

int run_example(const CommonOpts& o) {
  if (o.example == 0) throw InputError("example: pass --example <1..6>");
  const auto [spec, meta] = build_example(o.example, o.depth);
  const std::string text = serialize_spec(spec);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot open output file '" + o.out + "'");
    f << text;
  }
  return 0;
}

// ------------------------------------------------------------- conformance

int run_conformance(const CommonOpts& o, long L) {
  const DiagramSpec spec = load_spec(o);
  const ConformanceReport rep = model_conformance(spec, L);
  Report r("conformance");
  echo_input(r, o);
  r.header("L_bound", L);
  r.header("pass", rep.pass ? "true" : "false");
  r.columns({"level", "vertex", "scheme_mismatches", "best_mismatches", "ok"});
  for (const auto& row : rep.rows)
    r.row({std::to_string(row.level), std::to_string(row.vertex),
           row.scheme_mismatches.str(), row.best_mismatches.str(),
           row.ok ? "true" : "false"});
  emit_report(r, o.format, o.out);
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact analysis of Toeplitz-type Bratteli-Vershik diagrams"};
  app.require_subcommand(1);

  CommonOpts common;
  long b = 0, a = 1, b_max = 8, steps = 100, L = 12;
  int m = 2, n = 0, t = 1, t2 = 1, t0 = 1, level = 0, samples = 200;
  std::uint64_t seed = 0;
  double delta = 0.05, cluster_tol = 0.02;
  bool expand = false, gaps = false;
  std::string I_text, windows_text, source_mode = "I", sets_text,
      start = "min", track_text, kmap_mode = "extract", dump_path;
  AcceptanceThresholds thresholds;

  const auto with_thresholds = [&](CLI::App* cmd) {
    cmd->add_option("--tau", thresholds.tau_accept, "acceptance threshold");
    cmd->add_option("--last-windows", thresholds.last_windows,
                    "late windows that must clear tau");
    cmd->add_option("--slack", thresholds.monotone_slack,
                    "tolerated increase along the window ladder");
  };

  auto* validate = app.add_subcommand("validate", "properness hypotheses");
  add_common(validate, common);

  auto* matrices = app.add_subcommand("matrices", "incidence and products");
  add_common(matrices, common);
  matrices->add_option("--level", level, "incidence matrix level");
  matrices->add_option("--m", m, "window start");
  matrices->add_option("--n", n, "window end");

  auto* words = app.add_subcommand("words", "composed order words");
  add_common(words, common);
  words->add_option("--m", m, "window start")->required();
  words->add_option("--n", n, "window end")->required();
  words->add_option("--t", t, "target vertex");
  words->add_flag("--expand", expand, "emit letters instead of blocks");

  auto* measures = app.add_subcommand("measures", "invariant-measure estimates");
  add_common(measures, common);
  measures->add_option("--m", m, "report level");
  bool trajectories = false;
  measures->add_flag("--trajectories", trajectories,
                     "emit per-level tower-mass intervals instead");

  auto* clean = app.add_subcommand("clean", "cleanliness diagnostic");
  add_common(clean, common);
  clean->add_option("--delta", delta, "tower-mass threshold");
  clean->add_option("--cluster-tol", cluster_tol, "L1 clustering tolerance");

  auto* eigen = app.add_subcommand("eigen", "deficiency and acceptance");
  add_common(eigen, common);
  eigen->add_option("--b", b, "denominator")->required();
  eigen->add_option("--a", a, "numerator");
  eigen->add_option("--I", I_text, "hypothesized I set, e.g. 1,2,3");
  eigen->add_option("--windows", windows_text, "window list m:n,m:n,...");
  eigen->add_option("--source-mode", source_mode, "t1 sum over all or I")
      ->check(CLI::IsMember({"all", "I"}));
  eigen->add_flag("--gaps", gaps, "emit per-pair gap rows");
  with_thresholds(eigen);

  auto* kmap = app.add_subcommand("kmap", "dominant residue classes");
  add_common(kmap, common);
  kmap->add_option("--b", b, "denominator")->required();
  kmap->add_option("--a", a, "numerator");
  kmap->add_option("--m", m, "window start")->required();
  kmap->add_option("--n", n, "window end")->required();
  kmap->add_option("--I", I_text, "target vertices");
  kmap->add_option("--dump-tensor", dump_path,
                   "write the raw residue tensor CSV here");

  auto* cocycle = app.add_subcommand("cocycle", "cocycle-law verification");
  add_common(cocycle, common);
  cocycle->add_option("--b", b, "denominator")->required();
  cocycle->add_option("--a", a, "numerator");
  cocycle->add_option("--m", m, "window start")->required();
  cocycle->add_option("--n", n, "window end")->required();
  cocycle->add_option("--I", I_text, "vertex set");

  auto* psi = app.add_subcommand("psi", "Psi partition per target");
  add_common(psi, common);
  psi->add_option("--b", b, "denominator")->required();
  psi->add_option("--a", a, "numerator");
  psi->add_option("--m", m, "window start")->required();
  psi->add_option("--n", n, "window end")->required();
  psi->add_option("--t2", t2, "target vertex")->required();
  psi->add_option("--I", I_text, "domain");

  auto* survey_cmd = app.add_subcommand("survey", "candidate survey");
  add_common(survey_cmd, common);
  survey_cmd->add_option("--b-max", b_max, "largest denominator");
  survey_cmd->add_option("--I-sets", sets_text,
                         "semicolon-separated I sets, or 'auto'");
  survey_cmd->add_option("--delta", delta, "delta for auto I detection");
  with_thresholds(survey_cmd);

  auto* orbit = app.add_subcommand("orbit", "successor orbit dump");
  add_common(orbit, common);
  orbit->add_option("--t", t, "target vertex");
  orbit->add_option("--steps", steps, "orbit steps");
  orbit->add_option("--start", start, "start path")
      ->check(CLI::IsMember({"min", "max"}));
  orbit->add_option("--m", m, "tracked level");
  orbit->add_option("--track", track_text, "residue denominators, e.g. 6,8");

  auto* converge = app.add_subcommand("converge", "phase-stabilization sampling");
  add_common(converge, common);
  converge->add_option("--b", b, "denominator")->required();
  converge->add_option("--a", a, "numerator");
  converge->add_option("--t0", t0, "reference vertex");
  converge->add_option("--samples", samples, "sampled paths");
  converge->add_option("--seed", seed, "rng seed");
  converge->add_option("--kmap", kmap_mode, "k-map source")
      ->check(CLI::IsMember({"model", "extract", "zero"}));
  converge->add_option("--m", m, "extraction window start");
  converge->add_option("--n", n, "extraction window end");

  auto* example = app.add_subcommand("example", "emit a built example spec");
  add_common(example, common);

  auto* conformance = app.add_subcommand("conformance", "model-scheme check");
  add_common(conformance, common);
  conformance->add_option("--L", L, "exception bound per word");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(common);
    if (app.got_subcommand(matrices)) return run_matrices(common, level, m, n);
    if (app.got_subcommand(words)) return run_words(common, m, n, t, expand);
    if (app.got_subcommand(measures))
      return run_measures(common, m, trajectories);
    if (app.got_subcommand(clean)) return run_clean(common, delta, cluster_tol);
    if (app.got_subcommand(eigen))
      return run_eigen(common, b, a, I_text, windows_text, source_mode,
                       thresholds, gaps);
    if (app.got_subcommand(kmap))
      return run_kmap(common, b, a, m, n, I_text, dump_path);
    if (app.got_subcommand(cocycle))
      return run_cocycle(common, b, a, m, n, I_text);
    if (app.got_subcommand(psi)) return run_psi(common, b, a, m, n, t2, I_text);
    if (app.got_subcommand(survey_cmd))
      return run_survey(common, b_max, sets_text, delta, thresholds);
    if (app.got_subcommand(orbit))
      return run_orbit(common, t, steps, start, m, track_text);
    if (app.got_subcommand(converge))
      return run_converge(common, b, a, t0, samples, seed, kmap_mode, m, n);
    if (app.got_subcommand(example)) return run_example(common);
    if (app.got_subcommand(conformance)) return run_conformance(common, L);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const AnalysisError& e) {
    std::cerr << "analysis error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

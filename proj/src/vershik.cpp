#include "adicscope/vershik.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "adicscope/errors.hpp"

namespace adicscope {

namespace {

void refresh_chain_below(const DiagramSpec& spec, PathPoint& x, int level) {
  // Recompute tau_{level-1}, ..., tau_1 from the positions.
  for (int n = level; n >= 2; --n) {
    const int t = x.vertices[static_cast<std::size_t>(n - 1)];
    x.vertices[static_cast<std::size_t>(n - 2)] =
        spec.word(n, t).letter_at(x.position_at(n));
  }
}

void check_path_args(const DiagramSpec& spec, int depth) {
  spec.require_toeplitz("vershik path operations");
  if (depth < 2 || depth > spec.depth())
    throw AnalysisError("path depth out of range 2.." +
                        std::to_string(spec.depth()));
}

}  // namespace

PathPoint make_path(const DiagramSpec& spec, int target,
                    std::vector<BigInt> positions) {
  const int depth = static_cast<int>(positions.size()) + 1;
  check_path_args(spec, depth);
  spec.check_vertex(target);
  PathPoint x;
  x.depth = depth;
  x.positions = std::move(positions);
  x.vertices.assign(static_cast<std::size_t>(depth), 0);
  x.vertices.back() = target;
  for (int n = 2; n <= depth; ++n) {
    const BigInt& j = x.position_at(n);
    if (j < 1 || j > spec.q(n))
      throw AnalysisError("path position at level " + std::to_string(n) +
                          " out of range");
  }
  refresh_chain_below(spec, x, depth);
  return x;
}

PathPoint min_path(const DiagramSpec& spec, int depth, int target) {
  check_path_args(spec, depth);
  std::vector<BigInt> pos(static_cast<std::size_t>(depth - 1), 1);
  return make_path(spec, target, std::move(pos));
}

PathPoint max_path(const DiagramSpec& spec, int depth, int target) {
  check_path_args(spec, depth);
  std::vector<BigInt> pos;
  for (int n = 2; n <= depth; ++n) pos.push_back(spec.q(n));
  return make_path(spec, target, std::move(pos));
}

BigInt suffix_digit(const DiagramSpec& spec, const PathPoint& x, int i) {
  if (i < 1 || i >= x.depth)
    throw AnalysisError("suffix digit index out of range");
  return spec.q(i + 1) - x.position_at(i + 1);
}

BigInt entrance_time(const DiagramSpec& spec, const PathPoint& x, int n) {
  if (n < 1 || n > x.depth)
    throw AnalysisError("entrance_time: level out of range");
  BigInt r = 0;
  BigInt p = 1;  // p_i
  for (int i = 1; i <= n - 1; ++i) {
    r += p * suffix_digit(spec, x, i);
    p *= spec.q(i + 1);
  }
  return r;
}

BigInt entrance_time_mod(const DiagramSpec& spec, const PathPoint& x, int n,
                         const BigInt& b) {
  if (n < 1 || n > x.depth)
    throw AnalysisError("entrance_time_mod: level out of range");
  BigInt r = 0;
  BigInt p = mod_floor(1, b);
  for (int i = 1; i <= n - 1; ++i) {
    r = mod_floor(r + p * mod_floor(suffix_digit(spec, x, i), b), b);
    p = mod_floor(p * spec.q(i + 1), b);
  }
  return r;
}

BigInt suffix_range(const DiagramSpec& spec, const PathPoint& x, int l, int n) {
  if (l < 1 || l >= n || n > x.depth)
    throw AnalysisError("suffix_range: bad window");
  BigInt s = 0;
  BigInt q = 1;  // q_{l,i}
  for (int i = l; i <= n - 1; ++i) {
    s += q * suffix_digit(spec, x, i);
    q *= spec.q(i + 1);
  }
  return s;
}

bool is_max_path(const DiagramSpec& spec, const PathPoint& x) {
  for (int n = 2; n <= x.depth; ++n)
    if (x.position_at(n) != spec.q(n)) return false;
  return true;
}

PathPoint successor(const DiagramSpec& spec, const PathPoint& x, bool wrap) {
  check_path_args(spec, x.depth);
  int level = 0;
  for (int n = 2; n <= x.depth; ++n)
    if (x.position_at(n) < spec.q(n)) {
      level = n;
      break;
    }
  if (level == 0) {
    if (wrap) return min_path(spec, x.depth, x.target());
    throw AnalysisError("successor: maximal path (use wrap to cycle)");
  }
  PathPoint y = x;
  y.positions[static_cast<std::size_t>(level - 2)] += 1;
  for (int n = 2; n < level; ++n)
    y.positions[static_cast<std::size_t>(n - 2)] = 1;
  refresh_chain_below(spec, y, level);
  return y;
}

PathPoint sample_path(const DiagramSpec& spec, int depth,
                      const std::vector<BigRat>& tower_masses,
                      std::uint64_t rng_seed) {
  check_path_args(spec, depth);
  if (static_cast<int>(tower_masses.size()) != spec.rank())
    throw AnalysisError("sample_path: mass vector size != rank");
  BigRat total = 0;
  for (const auto& w : tower_masses) {
    if (w < 0) throw AnalysisError("sample_path: negative mass");
    total += w;
  }
  if (total != 1) throw AnalysisError("sample_path: masses do not sum to 1");

  std::mt19937_64 rng(rng_seed);
  const BigInt two64 = BigInt(1) << 64;

  // End vertex by inverse CDF against a 64-bit uniform draw.
  const std::uint64_t draw = rng();
  int target = spec.rank();
  BigRat cum = 0;
  for (int t = 1; t <= spec.rank(); ++t) {
    cum += tower_masses[static_cast<std::size_t>(t - 1)];
    const BigInt threshold =
        (boost::multiprecision::numerator(cum) * two64) /
        boost::multiprecision::denominator(cum);
    if (BigInt(draw) < threshold) {
      target = t;
      break;
    }
  }

  // Uniform rank in [0, p_depth) by rejection over 64-bit words.
  const BigInt p_depth = spec.p(depth);
  const std::size_t bits = boost::multiprecision::msb(p_depth) + 1;
  const std::size_t words = (bits + 63) / 64;
  BigInt rank;
  do {
    rank = 0;
    for (std::size_t w = 0; w < words; ++w) rank = (rank << 64) | BigInt(rng());
    rank &= (BigInt(1) << bits) - 1;
  } while (rank >= p_depth);

  // Mixed-radix decode: rank = sum p_i * s_i gives the suffix digits.
  std::vector<BigInt> positions;
  BigInt rest = rank;
  for (int n = 2; n <= depth; ++n) {
    const BigInt q = spec.q(n);
    const BigInt digit = rest % q;  // s_{n-1}
    rest /= q;
    positions.push_back(q - digit);
  }
  return make_path(spec, target, std::move(positions));
}

ConvergenceReport convergence_test(const DiagramSpec& spec,
                                   const EigenvalueCandidate& cand,
                                   const KMap& kmap, int t0, int samples,
                                   int depth, std::uint64_t rng_seed) {
  check_path_args(spec, depth);
  spec.check_vertex(t0);
  if (samples < 1) throw AnalysisError("convergence_test: samples must be >= 1");
  const BigInt p = cand.stable_p();
  const BigInt& b = cand.b;

  ConvergenceReport rep;
  rep.samples = samples;
  rep.depth = depth;
  rep.stabilize_from = std::max(2, depth - 2);
  rep.last_change_histogram.assign(static_cast<std::size_t>(depth) + 1, 0);

  const auto masses = uniform_seed(spec.rank());
  for (int s = 0; s < samples; ++s) {
    // Derived per-sample stream keeps samples independent of evaluation order.
    const PathPoint x =
        sample_path(spec, depth, masses,
                    rng_seed + 0x9e3779b97f4a7c15ULL * (s + 1));
    bool missing = false;
    int last_change = 0;
    BigInt prev_phase = -1;
    BigInt r_mod = 0;   // r_n mod b, incrementally
    BigInt p_mod = mod_floor(1, b);  // p_{n-1} mod b
    for (int n = 2; n <= depth; ++n) {
      r_mod = mod_floor(r_mod + p_mod * suffix_digit(spec, x, n - 1), b);
      p_mod = mod_floor(p_mod * spec.q(n), b);
      const auto k = kmap.k_of(t0, x.vertex_at(n));
      if (!k) {
        missing = true;
        break;
      }
      const BigInt phase = mod_floor(r_mod - p * *k, b);  // r_n + rho_n(tau_n)
      if (prev_phase >= 0 && phase != prev_phase) last_change = n;
      prev_phase = phase;
    }
    if (missing) {
      ++rep.missing_kmap;
      continue;
    }
    ++rep.last_change_histogram[static_cast<std::size_t>(last_change)];
    if (last_change < rep.stabilize_from) ++rep.stabilized;
  }
  rep.fraction = static_cast<double>(rep.stabilized) / samples;
  return rep;
}

BigRat bad_set_measure(const DiagramSpec& spec, const EigenvalueCandidate& cand,
                       const KMap& kmap, const std::vector<int>& I, int m,
                       int n, const MeasureVector& measure_at_n) {
  spec.check_window(m, n);
  if (measure_at_n.level != n)
    throw AnalysisError("bad_set_measure: measure vector is at level " +
                        std::to_string(measure_at_n.level) + ", window ends at " +
                        std::to_string(n));
  const long bb = cand.bb_long();
  if (cand.b > (BigInt(1) << 12))
    throw AnalysisError("bad_set_measure: b too large for residue tensors");
  const ResidueCountTensor folded =
      collapse_tensor(range_residue_counts(spec, m, n, cand.b.convert_to<long>()),
                      bb);
  const BigInt p_m = spec.p(m);
  const std::set<int> inside(I.begin(), I.end());

  BigRat mass = 0;
  for (int t2 : inside) {
    spec.check_vertex(t2);
    for (int t1 = 1; t1 <= spec.rank(); ++t1) {
      const BigInt P = folded.pair_total(t1, t2);
      if (P == 0) continue;  // no paths, contributes nothing
      const auto k = kmap.k_of(t1, t2);
      if (!k)
        throw AnalysisError("bad_set_measure: k undefined for pair (" +
                            std::to_string(t1) + "," + std::to_string(t2) +
                            ") with P > 0");
      const BigInt good = folded.at(t1, t2, *k);
      mass += BigRat((P - good) * p_m) *
              measure_at_n.base[static_cast<std::size_t>(t2 - 1)];
    }
  }
  for (int t = 1; t <= spec.rank(); ++t)
    if (!inside.count(t))
      mass += measure_at_n.tower[static_cast<std::size_t>(t - 1)];
  return mass;
}

}  // namespace adicscope

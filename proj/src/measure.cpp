#include "adicscope/measure.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "adicscope/errors.hpp"

namespace adicscope {

namespace {

BigRat l1_distance(const std::vector<BigRat>& a, const std::vector<BigRat>& b) {
  BigRat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    BigRat diff = a[i] - b[i];
    if (diff < 0) diff = -diff;
    s += diff;
  }
  return s;
}

}  // namespace

std::vector<BigRat> uniform_seed(int d) {
  return std::vector<BigRat>(static_cast<std::size_t>(d), BigRat(1, d));
}

MeasureVector measure_estimate(const DiagramSpec& spec, int m, int n,
                               const std::vector<BigRat>& seed) {
  spec.check_window(m, n);
  if (static_cast<int>(seed.size()) != spec.rank())
    throw AnalysisError("measure_estimate: seed size != rank");
  BigRat total = 0;
  for (const auto& s : seed) {
    if (s < 0) throw AnalysisError("measure_estimate: negative seed mass");
    total += s;
  }
  if (total != 1) throw AnalysisError("measure_estimate: seed does not sum to 1");

  const int d = spec.rank();
  const auto h_n = spec.heights(n);
  const auto h_m = spec.heights(m);
  std::vector<BigRat> base_n(static_cast<std::size_t>(d));
  for (int t = 1; t <= d; ++t)
    base_n[static_cast<std::size_t>(t - 1)] =
        seed[static_cast<std::size_t>(t - 1)] /
        BigRat(h_n[static_cast<std::size_t>(t - 1)]);

  const IntMatrix P = product_matrix(spec, m, n);
  MeasureVector out;
  out.level = m;
  out.base.assign(static_cast<std::size_t>(d), BigRat(0));
  out.tower.assign(static_cast<std::size_t>(d), BigRat(0));
  for (int t1 = 1; t1 <= d; ++t1) {
    BigRat s = 0;
    for (int t2 = 1; t2 <= d; ++t2)
      s += BigRat(P.at(t1, t2)) * base_n[static_cast<std::size_t>(t2 - 1)];
    out.base[static_cast<std::size_t>(t1 - 1)] = s;
    out.tower[static_cast<std::size_t>(t1 - 1)] =
        s * BigRat(h_m[static_cast<std::size_t>(t1 - 1)]);
  }
  return out;
}

MeasureVector point_mass_estimate(const DiagramSpec& spec, int m, int n,
                                  int t2) {
  spec.check_vertex(t2);
  std::vector<BigRat> seed(static_cast<std::size_t>(spec.rank()), BigRat(0));
  seed[static_cast<std::size_t>(t2 - 1)] = 1;
  return measure_estimate(spec, m, n, seed);
}

BigRat simplex_diameter(const DiagramSpec& spec, int m, int n) {
  spec.check_window(m, n);
  const int d = spec.rank();
  std::vector<std::vector<BigRat>> towers;
  towers.reserve(static_cast<std::size_t>(d));
  for (int t2 = 1; t2 <= d; ++t2)
    towers.push_back(point_mass_estimate(spec, m, n, t2).tower);
  BigRat best = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      best = std::max(best, l1_distance(towers[static_cast<std::size_t>(i)],
                                        towers[static_cast<std::size_t>(j)]));
  return best;
}

TowerMassTable tower_mass_limit_table(const DiagramSpec& spec, int depth) {
  if (depth < 3 || depth > spec.depth())
    throw AnalysisError("tower_mass_limit_table: depth out of range");
  const int d = spec.rank();
  TowerMassTable table;
  table.deepest = depth;
  for (int m = 2; m <= depth - 1; ++m) {
    std::vector<std::vector<BigRat>> towers;
    for (int t2 = 1; t2 <= d; ++t2)
      towers.push_back(point_mass_estimate(spec, m, depth, t2).tower);
    for (int t = 1; t <= d; ++t) {
      TowerMassTable::Row row;
      row.level = m;
      row.vertex = t;
      row.lo = towers[0][static_cast<std::size_t>(t - 1)];
      row.hi = row.lo;
      for (int t2 = 2; t2 <= d; ++t2) {
        const BigRat& v =
            towers[static_cast<std::size_t>(t2 - 1)][static_cast<std::size_t>(t - 1)];
        row.lo = std::min(row.lo, v);
        row.hi = std::max(row.hi, v);
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

CleanlinessReport cleanliness_classify(const DiagramSpec& spec, int depth,
                                       double delta, double cluster_tol) {
  if (depth < 4 || depth > spec.depth())
    throw AnalysisError("cleanliness_classify: need 4 <= depth <= spec depth");
  const int d = spec.rank();
  CleanlinessReport rep;
  rep.delta = delta;
  rep.cluster_tol = cluster_tol;
  rep.cluster_level = 2;

  // Single-linkage clustering of the level-2 tower vectors of the point-mass
  // seeds: two seeds join when their vectors are within cluster_tol in L1.
  std::vector<std::vector<BigRat>> cols;
  for (int t2 = 1; t2 <= d; ++t2)
    cols.push_back(point_mass_estimate(spec, 2, depth, t2).tower);
  const BigRat tol(static_cast<long>(cluster_tol * 1e9), 1000000000L);
  std::vector<int> parent(static_cast<std::size_t>(d));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (l1_distance(cols[static_cast<std::size_t>(i)],
                      cols[static_cast<std::size_t>(j)]) <= tol)
        parent[static_cast<std::size_t>(find(j))] = find(i);

  std::vector<std::vector<int>> clusters;
  for (int root = 0; root < d; ++root) {
    if (find(root) != root) continue;
    std::vector<int> members;
    for (int t = 0; t < d; ++t)
      if (find(t) == root) members.push_back(t + 1);
    clusters.push_back(std::move(members));
  }
  std::sort(clusters.begin(), clusters.end());

  // Levels inspected for the threshold test: the last three below the seed
  // level (the seed level itself is degenerate).
  const int lo_level = std::max(2, depth - 3);
  const int hi_level = depth - 1;

  std::vector<std::vector<BigRat>> group_mass_at_level(
      static_cast<std::size_t>(depth + 1));
  const BigRat delta_rat(static_cast<long>(delta * 1e9), 1000000000L);

  for (const auto& members : clusters) {
    CleanlinessReport::Group g;
    g.seeds = members;
    std::vector<BigRat> seed(static_cast<std::size_t>(d), BigRat(0));
    for (int t2 : members)
      seed[static_cast<std::size_t>(t2 - 1)] =
          BigRat(1, static_cast<long>(members.size()));
    std::vector<std::vector<BigRat>> traj;
    for (int m = 2; m <= depth - 1; ++m)
      traj.push_back(measure_estimate(spec, m, depth, seed).tower);
    for (int t = 1; t <= d; ++t) {
      bool above = true;
      for (int m = lo_level; m <= hi_level; ++m)
        if (traj[static_cast<std::size_t>(m - 2)][static_cast<std::size_t>(t - 1)] <
            delta_rat)
          above = false;
      if (above) g.I.push_back(t);
    }
    g.trajectory = std::move(traj);
    rep.groups.push_back(std::move(g));
  }

  // Proposed I sets must be disjoint; a vertex claimed twice goes to the
  // group giving it the largest mass at the deepest inspected level.
  for (int t = 1; t <= d; ++t) {
    int best = -1;
    BigRat best_mass = -1;
    for (std::size_t gi = 0; gi < rep.groups.size(); ++gi) {
      auto& g = rep.groups[gi];
      if (std::find(g.I.begin(), g.I.end(), t) == g.I.end()) continue;
      const BigRat mass =
          g.trajectory[static_cast<std::size_t>(hi_level - 2)]
                      [static_cast<std::size_t>(t - 1)];
      if (mass > best_mass) {
        best_mass = mass;
        best = static_cast<int>(gi);
      }
    }
    for (std::size_t gi = 0; gi < rep.groups.size(); ++gi) {
      if (static_cast<int>(gi) == best) continue;
      auto& I = rep.groups[gi].I;
      I.erase(std::remove(I.begin(), I.end(), t), I.end());
    }
  }

  std::vector<bool> covered(static_cast<std::size_t>(d) + 1, false);
  for (const auto& g : rep.groups) {
    for (int t : g.I) covered[static_cast<std::size_t>(t)] = true;
    if (static_cast<int>(g.I.size()) == d) rep.exact_finite_rank = true;
  }
  for (int t = 1; t <= d; ++t) {
    if (covered[static_cast<std::size_t>(t)]) continue;
    rep.vanishing.push_back(t);
    // Monotone decay check on max-over-groups mass across the last levels.
    bool monotone = true;
    BigRat prev = -1;
    for (int m = lo_level; m <= hi_level; ++m) {
      BigRat mass = 0;
      for (const auto& g : rep.groups)
        mass = std::max(mass, g.trajectory[static_cast<std::size_t>(m - 2)]
                                          [static_cast<std::size_t>(t - 1)]);
      if (prev >= 0 && mass > prev) monotone = false;
      prev = mass;
    }
    rep.vanishing_monotone.push_back(monotone ? 1 : 0);
  }
  return rep;
}

LowIndependenceReport low_independence_check(const DiagramSpec& spec,
                                             const std::vector<int>& I, int m,
                                             int depth, double delta) {
  if (I.empty()) throw AnalysisError("low_independence_check: empty I");
  for (int t : I) spec.check_vertex(t);
  if (m < 1 || m >= depth || depth > spec.depth())
    throw AnalysisError("low_independence_check: bad window");
  spec.require_toeplitz("low_independence_check");

  LowIndependenceReport rep;
  rep.m = m;
  rep.delta = delta;
  const BigRat threshold(static_cast<long>(delta / 3.0 * 1e9), 1000000000L);
  for (int n = m + 1; n <= depth; ++n) {
    const IntMatrix P = product_matrix(spec, m, n);
    const BigInt q = spec.q_range(m, n);
    BigRat mn = -1;
    for (int t1 : I)
      for (int t2 : I) {
        const BigRat r(P.at(t1, t2), q);
        if (mn < 0 || r < mn) mn = r;
      }
    rep.rows.push_back({n, mn});
  }
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    bool ok = true;
    for (std::size_t j = i; j < rep.rows.size(); ++j)
      if (rep.rows[j].min_ratio < threshold) ok = false;
    if (ok) {
      rep.n0 = rep.rows[i].n;
      break;
    }
  }
  return rep;
}

}  // namespace adicscope

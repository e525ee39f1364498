#pragma once

#include <cstdint>
#include <vector>

#include "adicscope/diagram.hpp"
#include "adicscope/eigen.hpp"
#include "adicscope/measure.hpp"
#include "adicscope/numeric.hpp"

namespace adicscope {

/// A finite path from the root: the level-N end vertex plus the rank j_n of
/// the chosen incoming edge at each level n (1 <= j_n <= q_n, local order).
/// The vertex chain is derived downward: tau_{n-1} is letter j_n of
/// w_n(tau_n). Suffix digits are s_n = q_{n+1} - j_{n+1}; the entrance time
/// is r_n = sum_{i<n} p_i s_i.
struct PathPoint {
  int depth = 0;
  std::vector<BigInt> positions;  // positions[i] = j_{i+2}, i = 0..depth-2
  std::vector<int> vertices;      // vertices[i] = tau_{i+1}, i = 0..depth-1

  int target() const { return vertices.back(); }
  int vertex_at(int level) const {
    return vertices[static_cast<std::size_t>(level - 1)];
  }
  const BigInt& position_at(int level) const {
    return positions[static_cast<std::size_t>(level - 2)];
  }
};

PathPoint make_path(const DiagramSpec& spec, int target,
                    std::vector<BigInt> positions);

PathPoint min_path(const DiagramSpec& spec, int depth, int target = 1);
PathPoint max_path(const DiagramSpec& spec, int depth, int target = 1);

/// s_i(x) = q_{i+1} - j_{i+1}, for 1 <= i <= depth-1.
BigInt suffix_digit(const DiagramSpec& spec, const PathPoint& x, int i);

/// r_n(x), 1 <= n <= depth.
BigInt entrance_time(const DiagramSpec& spec, const PathPoint& x, int n);
BigInt entrance_time_mod(const DiagramSpec& spec, const PathPoint& x, int n,
                         const BigInt& b);

/// s_{l,n}(x) = number of paths in E_{l,n} into tau_n(x) strictly above x.
BigInt suffix_range(const DiagramSpec& spec, const PathPoint& x, int l, int n);

/// Vershik successor: bump the lowest non-maximal edge, reset below to the
/// minimal path into its new source. Decreases r_depth by exactly 1. At the
/// maximal path: wrap to the minimal path of the same tower when `wrap`,
/// otherwise throw.
PathPoint successor(const DiagramSpec& spec, const PathPoint& x,
                    bool wrap = false);

bool is_max_path(const DiagramSpec& spec, const PathPoint& x);

/// Measure-faithful sampling: the end vertex follows `tower_masses`, the rank
/// within the tower is uniform (mixed-radix decode of a uniform index in
/// [0, p_N)). mt19937_64 keeps identical seeds reproducible across platforms.
PathPoint sample_path(const DiagramSpec& spec, int depth,
                      const std::vector<BigRat>& tower_masses,
                      std::uint64_t rng_seed);

struct ConvergenceReport {
  int samples = 0;
  int depth = 0;
  int stabilize_from = 0;  // phases must be constant from this level on
  int stabilized = 0;
  double fraction = 0.0;
  int missing_kmap = 0;  // samples that hit a pair absent from the k-map
  // histogram[n] = samples whose phases last changed at level n (2..depth);
  // histogram[0] counts samples whose phases never changed.
  std::vector<int> last_change_histogram;
};

/// Phase-stabilization test: track lambda^{r_n + rho_n(tau_n)} with
/// rho_n(t) = -p k(t0, t), all exponents mod b; a sample stabilizes when the
/// phase is constant over the last three levels.
ConvergenceReport convergence_test(const DiagramSpec& spec,
                                   const EigenvalueCandidate& cand,
                                   const KMap& kmap, int t0, int samples,
                                   int depth, std::uint64_t rng_seed);

/// Exact mass of the bad set C_{m,n}: paths whose suffix class disagrees with
/// the k-map, plus everything ending outside I.
BigRat bad_set_measure(const DiagramSpec& spec, const EigenvalueCandidate& cand,
                       const KMap& kmap, const std::vector<int>& I, int m,
                       int n, const MeasureVector& measure_at_n);

}  // namespace adicscope

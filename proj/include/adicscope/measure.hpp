#pragma once

#include <vector>

#include "adicscope/diagram.hpp"
#include "adicscope/numeric.hpp"

namespace adicscope {

/// Exact base-set masses mu_m(t) and tower masses mu(tau_m = t) = h_m(t) mu_m(t)
/// at one level. Tower masses always sum to exactly 1.
struct MeasureVector {
  int level = 0;
  std::vector<BigRat> base;   // mu_m(t), index t-1
  std::vector<BigRat> tower;  // h_m(t) * mu_m(t)

  BigRat tower_mass(int t) const {
    return tower[static_cast<std::size_t>(t - 1)];
  }
};

/// Pulls a level-n tower-mass seed down to level m through mu_m = P_{m,n} mu_n.
/// The seed is a probability vector over the level-n towers.
MeasureVector measure_estimate(const DiagramSpec& spec, int m, int n,
                               const std::vector<BigRat>& seed);

MeasureVector point_mass_estimate(const DiagramSpec& spec, int m, int n, int t2);

std::vector<BigRat> uniform_seed(int d);

/// Max L1 distance at level m between the tower vectors of all point-mass
/// seeds at level n. Small diameter certifies unique ergodicity at tolerance.
BigRat simplex_diameter(const DiagramSpec& spec, int m, int n);

/// Per-vertex interval of tower masses across all point-mass seeds at the
/// deepest level.
struct TowerMassTable {
  int deepest = 0;
  struct Row {
    int level = 0;
    int vertex = 0;
    BigRat lo, hi;
  };
  std::vector<Row> rows;  // levels 2..deepest-1, vertices 1..d

  const Row& at(int level, int vertex, int d) const {
    return rows[static_cast<std::size_t>(level - 2) * d + (vertex - 1)];
  }
};

TowerMassTable tower_mass_limit_table(const DiagramSpec& spec, int depth);

/// Finite-depth cleanliness diagnostic: point-mass columns are clustered into
/// candidate ergodic measures, then each group proposes the vertex set whose
/// tower mass stays above delta. Heuristic; every number is reported.
struct CleanlinessReport {
  double delta = 0.05;
  double cluster_tol = 0.02;  // L1, on level-2 tower vectors
  int cluster_level = 2;

  struct Group {
    std::vector<int> seeds;      // deepest-level vertices in this cluster
    std::vector<int> I;          // proposed I set
    // trajectory[level-2][t-1] = group tower mass of vertex t at that level
    std::vector<std::vector<BigRat>> trajectory;
  };
  std::vector<Group> groups;
  std::vector<int> vanishing;          // vertices in no proposed I
  std::vector<int> vanishing_monotone; // 1 if mass non-increasing in level
  bool exact_finite_rank = false;      // some I covers every vertex
};

CleanlinessReport cleanliness_classify(const DiagramSpec& spec, int depth,
                                       double delta,
                                       double cluster_tol = 0.02);

/// Low-independence diagnostic: min over I x I of P_{m,n}/q_{m,n} per n, and the
/// first n0 from which the ratio stays >= delta/3 through `depth`.
struct LowIndependenceReport {
  int m = 0;
  double delta = 0.0;
  struct Row {
    int n = 0;
    BigRat min_ratio;
  };
  std::vector<Row> rows;
  int n0 = 0;  // 0 when the threshold is never met
};

LowIndependenceReport low_independence_check(const DiagramSpec& spec,
                                             const std::vector<int>& I, int m,
                                             int depth, double delta);

}  // namespace adicscope

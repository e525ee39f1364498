#pragma once

#include <string>
#include <vector>

#include "adicscope/diagram.hpp"
#include "adicscope/eigen.hpp"

namespace adicscope {

/// Published claims attached to a built example, for report cross-checks.
struct ExampleMeta {
  int id = 0;
  struct MeasureClaim {
    std::vector<int> I;
    std::vector<std::pair<long, long>> eigenvalues;  // (b, bb) accepted
  };
  std::vector<MeasureClaim> measures;
  bool uniquely_ergodic = false;
  std::vector<std::string> notes;
};

/// Deterministic rank-7 builders for the six example diagrams.
///
/// Characteristic sequence: q_2 = 50, q_n = 5^(2n) for n >= 3. Level 2 is
/// unconstrained by the schemes, so every builder uses the fixed word
/// "1 (2 3 4 5 6 7 1)^7" for all vertices. Example 1 is a construction
/// scheme rather than an instance; build_example(1) returns the Example-2
/// instance with a note, and model_conformance checks the scheme itself.
std::pair<DiagramSpec, ExampleMeta> build_example(int id, int depth);

/// Per-word distance to the W-class cyclic pattern (W1 = {1,4,7},
/// W2 = {2,5}, W3 = {3,6}), computed blockwise; `scheme` aligns the cycle to
/// the word's own vertex class, `best` minimizes over the three rotations.
struct ConformanceReport {
  long L_bound = 0;
  bool pass = true;
  struct Row {
    int level = 0;
    int vertex = 0;
    BigInt scheme_mismatches;
    BigInt best_mismatches;
    bool ok = true;
  };
  std::vector<Row> rows;
  KMap kmap;  // k(t1,t2) = j - i mod 3 for t1 in W_i, t2 in W_j
};

ConformanceReport model_conformance(const DiagramSpec& spec, long L_bound);

/// The model k-map itself (rank 7, classes mod 3), usable directly.
KMap model_kmap();

/// W-class of a vertex (1-based: 1 for {1,4,7}, 2 for {2,5}, 3 for {3,6}).
int model_class(int vertex);

}  // namespace adicscope

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adicscope/matrix.hpp"
#include "adicscope/numeric.hpp"
#include "adicscope/order_word.hpp"

namespace adicscope {

/// One level n >= 2 of an ordered Bratteli diagram: the order words of the
/// d vertices at that level. For Toeplitz-type levels every word has the
/// same length q (the in-degree); generalized levels (produced by vertex
/// restriction) carry q = 0 and per-vertex lengths.
struct LevelSpec {
  int index = 0;           // level number n, 2..depth
  BigInt q = 0;            // common in-degree, or 0 when per-vertex
  std::vector<OrderWord> words;  // words[t-1] for vertex t = 1..d

  bool uniform() const { return q != 0; }
};

/// Ordered Bratteli diagram with the level-1 hat implicit (q_1 = 1, one root
/// edge per vertex, heights h_1 = (1,...,1)). Immutable after construction;
/// all operations on it are pure.
class DiagramSpec {
 public:
  DiagramSpec(int rank, std::vector<LevelSpec> levels);

  int rank() const { return d_; }
  int depth() const { return static_cast<int>(levels_.size()) + 1; }
  bool toeplitz() const { return toeplitz_; }

  /// Level access for n in 2..depth().
  const LevelSpec& level(int n) const;
  const OrderWord& word(int n, int t) const;

  /// In-degree of vertex t at level n (q_n for Toeplitz levels); n in 1..depth.
  BigInt in_degree(int n, int t) const;

  /// q_n for Toeplitz diagrams; n in 1..depth (q_1 = 1).
  BigInt q(int n) const;
  /// p_n = q_1 q_2 ... q_n; Toeplitz only.
  BigInt p(int n) const;
  /// q_{m,n} = q_{m+1} ... q_n for 0 <= m <= n <= depth; Toeplitz only.
  BigInt q_range(int m, int n) const;

  /// Height vector h_n (number of root paths into each vertex); defined for
  /// generalized diagrams too. h_n(t) = p_n for Toeplitz diagrams.
  std::vector<BigInt> heights(int n) const;

  void require_toeplitz(const std::string& op) const;
  void check_level(int n) const;      // 2..depth
  void check_window(int m, int n) const;  // 1 <= m < n <= depth
  void check_vertex(int t) const;

  bool operator==(const DiagramSpec& other) const {
    return d_ == other.d_ && levels_eq(other);
  }

 private:
  bool levels_eq(const DiagramSpec& other) const;

  int d_;
  std::vector<LevelSpec> levels_;  // levels_[k] is level k+2
  bool toeplitz_;
};

/// Diagnostic results of the properness hypotheses.
struct PropernessReport {
  bool h1_ok = true;        // hat heights all 1 (held by construction)
  bool h2_ok = true;        // every incidence matrix entrywise positive
  bool h3_ok = true;        // constant number of vertices per level
  bool h4_ok = true;        // all words at each level end with one letter
  bool unique_min_ok = true;  // all words at each level begin with one letter

  struct LevelDetail {
    int level = 0;
    std::vector<std::pair<int, int>> missing;  // (word vertex, absent letter)
    std::vector<int> first_letters;            // per vertex
    std::vector<int> last_letters;             // per vertex
    bool h2_ok = true, h4_ok = true, min_ok = true;
  };
  std::vector<LevelDetail> levels;

  bool all_ok() const {
    return h1_ok && h2_ok && h3_ok && h4_ok && unique_min_ok;
  }
};

PropernessReport validate_properness(const DiagramSpec& spec);

/// M_n: d x d, entry (t1,t2) = occurrences of t1 in the word of t2 at level n.
IntMatrix incidence_matrix(const DiagramSpec& spec, int n);

/// P_{m,n} = M_{m+1} ... M_n, with P_{n,n} = I. Requires 1 <= m <= n <= depth.
IntMatrix product_matrix(const DiagramSpec& spec, int m, int n);

/// Budget for representing composed words without full expansion.
struct ComposeLimits {
  std::size_t max_blocks = 1 << 16;      // blocks per composed word
  std::size_t max_flat_letters = 1 << 22;  // letters when flattening a repeat body
};

/// W_{m,n}(t): the level-m sources of the q_{m,n} paths into t at level n,
/// in the induced path order. W_{n-1,n}(t) = w_n(t).
OrderWord compose_words(const DiagramSpec& spec, int m, int n, int t,
                        const ComposeLimits& limits = {});

/// Contract the diagram onto cut_levels (strictly increasing, starting at 1).
DiagramSpec telescope(const DiagramSpec& spec, const std::vector<int>& cut_levels,
                      const ComposeLimits& limits = {});

/// Keep only the given vertices (renumbered 1..#keep in increasing order);
/// words are filtered, order preserved. Result may be generalized
/// (toeplitz() false) when the filtered lengths disagree.
DiagramSpec subdiagram_restrict(const DiagramSpec& spec,
                                const std::vector<int>& keep);

}  // namespace adicscope

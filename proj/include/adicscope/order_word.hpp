#pragma once

#include <cstdint>
#include <vector>

#include "adicscope/numeric.hpp"

namespace adicscope {

/// One run-length block: `letters` repeated `repeat` times.
struct WordBlock {
  std::vector<int> letters;
  BigInt repeat = 1;

  bool operator==(const WordBlock&) const = default;
};

/// An order word: the sequence of level-(n-1) source vertices of the edges
/// arriving at one vertex, listed in the local order. Stored run-length
/// encoded; the example diagrams have words of length 5^12 with two blocks.
///
/// Positions are 1-indexed throughout. The j-th position names the source of
/// the j-th smallest incoming edge, so the suffix value of that edge is
/// length() - j (the maximal edge, j = length, has suffix 0).
class OrderWord {
 public:
  OrderWord() = default;
  explicit OrderWord(std::vector<WordBlock> blocks);

  static OrderWord from_letters(const std::vector<int>& letters);

  const std::vector<WordBlock>& blocks() const { return blocks_; }
  const BigInt& length() const { return length_; }
  bool empty() const { return length_ == 0; }

  int first_letter() const;
  int last_letter() const;
  int max_letter() const;
  bool contains_all_letters(int d) const;

  /// Letter at 1-indexed position pos, 1 <= pos <= length().
  int letter_at(const BigInt& pos) const;

  /// counts[v-1] = number of occurrences of letter v, for v = 1..d.
  std::vector<BigInt> letter_counts(int d) const;

  /// Explicit expansion; throws ExpansionError when length() > limit.
  std::vector<int> expand(std::uint64_t limit) const;

  /// Keep only letters with old_to_new[v-1] != 0, renamed through the map.
  /// Relative order of retained positions is preserved.
  OrderWord filtered(const std::vector<int>& old_to_new) const;

  bool operator==(const OrderWord& other) const {
    return blocks_ == other.blocks_;
  }

 private:
  void canonicalize();

  std::vector<WordBlock> blocks_;
  BigInt length_ = 0;
};

/// Value of ADICSCOPE_MAX_EXPAND, defaulting to 2^31 letters.
std::uint64_t default_expand_limit();

}  // namespace adicscope

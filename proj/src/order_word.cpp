#include "adicscope/order_word.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "adicscope/errors.hpp"

namespace adicscope {

OrderWord::OrderWord(std::vector<WordBlock> blocks) : blocks_(std::move(blocks)) {
  canonicalize();
}

OrderWord OrderWord::from_letters(const std::vector<int>& letters) {
  if (letters.empty()) return OrderWord();
  return OrderWord({WordBlock{letters, 1}});
}

void OrderWord::canonicalize() {
  std::vector<WordBlock> out;
  for (auto& b : blocks_) {
    if (b.repeat <= 0 || b.letters.empty()) continue;
    // Adjacent repeat-1 blocks are one plain run of letters.
    if (!out.empty() && out.back().repeat == 1 && b.repeat == 1) {
      out.back().letters.insert(out.back().letters.end(), b.letters.begin(),
                                b.letters.end());
    } else {
      out.push_back(std::move(b));
    }
  }
  blocks_ = std::move(out);
  length_ = 0;
  for (const auto& b : blocks_) length_ += BigInt(b.letters.size()) * b.repeat;
}

int OrderWord::first_letter() const {
  if (empty()) throw AnalysisError("first_letter: empty order word");
  return blocks_.front().letters.front();
}

int OrderWord::last_letter() const {
  if (empty()) throw AnalysisError("last_letter: empty order word");
  return blocks_.back().letters.back();
}

int OrderWord::max_letter() const {
  int m = 0;
  for (const auto& b : blocks_)
    for (int v : b.letters) m = std::max(m, v);
  return m;
}

bool OrderWord::contains_all_letters(int d) const {
  std::vector<bool> seen(static_cast<std::size_t>(d) + 1, false);
  for (const auto& b : blocks_)
    for (int v : b.letters)
      if (v >= 1 && v <= d) seen[static_cast<std::size_t>(v)] = true;
  for (int v = 1; v <= d; ++v)
    if (!seen[static_cast<std::size_t>(v)]) return false;
  return true;
}

int OrderWord::letter_at(const BigInt& pos) const {
  if (pos < 1 || pos > length_)
    throw AnalysisError("letter_at: position out of range");
  BigInt off = pos - 1;
  for (const auto& b : blocks_) {
    const BigInt block_len = BigInt(b.letters.size()) * b.repeat;
    if (off < block_len) {
      const BigInt in_pattern = off % BigInt(b.letters.size());
      return b.letters[in_pattern.convert_to<std::size_t>()];
    }
    off -= block_len;
  }
  throw AnalysisError("letter_at: internal length mismatch");
}

std::vector<BigInt> OrderWord::letter_counts(int d) const {
  std::vector<BigInt> counts(static_cast<std::size_t>(d), 0);
  for (const auto& b : blocks_)
    for (int v : b.letters) {
      if (v < 1 || v > d)
        throw AnalysisError("letter_counts: letter " + std::to_string(v) +
                            " outside 1.." + std::to_string(d));
      counts[static_cast<std::size_t>(v - 1)] += b.repeat;
    }
  return counts;
}

std::vector<int> OrderWord::expand(std::uint64_t limit) const {
  if (length_ > limit)
    throw ExpansionError("expand: word length " + length_.str() +
                         " exceeds limit " + std::to_string(limit));
  std::vector<int> out;
  out.reserve(length_.convert_to<std::size_t>());
  for (const auto& b : blocks_) {
    const std::uint64_t r = b.repeat.convert_to<std::uint64_t>();
    for (std::uint64_t i = 0; i < r; ++i)
      out.insert(out.end(), b.letters.begin(), b.letters.end());
  }
  return out;
}

OrderWord OrderWord::filtered(const std::vector<int>& old_to_new) const {
  std::vector<WordBlock> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    WordBlock nb;
    nb.repeat = b.repeat;
    for (int v : b.letters) {
      const int mapped = (v >= 1 && v <= static_cast<int>(old_to_new.size()))
                             ? old_to_new[static_cast<std::size_t>(v - 1)]
                             : 0;
      if (mapped != 0) nb.letters.push_back(mapped);
    }
    if (!nb.letters.empty()) out.push_back(std::move(nb));
  }
  return OrderWord(std::move(out));
}

std::uint64_t default_expand_limit() {
  if (const char* env = std::getenv("ADICSCOPE_MAX_EXPAND")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t(1) << 31;
}

}  // namespace adicscope

#include "adicscope/diagram.hpp"

#include <algorithm>
#include <set>

#include "adicscope/errors.hpp"

namespace adicscope {

DiagramSpec::DiagramSpec(int rank, std::vector<LevelSpec> levels)
    : d_(rank), levels_(std::move(levels)) {
  if (d_ < 1) throw InputError("diagram rank must be >= 1");
  int expect = 2;
  for (auto& lv : levels_) {
    if (lv.index != expect)
      throw InputError("levels must be consecutive from 2; got level " +
                       std::to_string(lv.index) + " where " +
                       std::to_string(expect) + " was expected");
    if (static_cast<int>(lv.words.size()) != d_)
      throw InputError("level " + std::to_string(lv.index) + " has " +
                       std::to_string(lv.words.size()) + " words, rank is " +
                       std::to_string(d_));
    for (int t = 1; t <= d_; ++t) {
      const OrderWord& w = lv.words[static_cast<std::size_t>(t - 1)];
      if (w.empty())
        throw InputError("level " + std::to_string(lv.index) + " word " +
                         std::to_string(t) + " is empty");
      if (w.max_letter() > d_)
        throw InputError("level " + std::to_string(lv.index) + " word " +
                         std::to_string(t) + " uses vertex > rank");
      if (lv.uniform() && w.length() != lv.q)
        throw InputError("level " + std::to_string(lv.index) + " word " +
                         std::to_string(t) + " has length " +
                         w.length().str() + ", declared q is " + lv.q.str());
    }
    ++expect;
  }
  toeplitz_ = true;
  for (const auto& lv : levels_)
    if (!lv.uniform()) toeplitz_ = false;
}

bool DiagramSpec::levels_eq(const DiagramSpec& other) const {
  if (levels_.size() != other.levels_.size()) return false;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].q != other.levels_[i].q) return false;
    if (levels_[i].words != other.levels_[i].words) return false;
  }
  return true;
}

const LevelSpec& DiagramSpec::level(int n) const {
  check_level(n);
  return levels_[static_cast<std::size_t>(n - 2)];
}

const OrderWord& DiagramSpec::word(int n, int t) const {
  check_vertex(t);
  return level(n).words[static_cast<std::size_t>(t - 1)];
}

BigInt DiagramSpec::in_degree(int n, int t) const {
  if (n == 1) return 1;
  return word(n, t).length();
}

BigInt DiagramSpec::q(int n) const {
  require_toeplitz("q");
  if (n == 1) return 1;
  return level(n).q;
}

BigInt DiagramSpec::p(int n) const { return q_range(0, n); }

BigInt DiagramSpec::q_range(int m, int n) const {
  require_toeplitz("q_range");
  if (m > n || n > depth() || m < 0)
    throw AnalysisError("q_range: bad window (" + std::to_string(m) + "," +
                        std::to_string(n) + ")");
  BigInt r = 1;
  for (int i = std::max(m + 1, 2); i <= n; ++i) r *= level(i).q;
  return r;
}

std::vector<BigInt> DiagramSpec::heights(int n) const {
  if (n < 1 || n > depth())
    throw AnalysisError("heights: level out of range");
  std::vector<BigInt> h(static_cast<std::size_t>(d_), 1);  // h_1 = (1,...,1)
  for (int lev = 2; lev <= n; ++lev) {
    std::vector<BigInt> next(static_cast<std::size_t>(d_), 0);
    for (int t = 1; t <= d_; ++t) {
      const auto counts = word(lev, t).letter_counts(d_);
      BigInt s = 0;
      for (int u = 1; u <= d_; ++u)
        s += counts[static_cast<std::size_t>(u - 1)] *
             h[static_cast<std::size_t>(u - 1)];
      next[static_cast<std::size_t>(t - 1)] = s;
    }
    h = std::move(next);
  }
  return h;
}

void DiagramSpec::require_toeplitz(const std::string& op) const {
  if (!toeplitz_)
    throw NotToeplitzError(op + ": requires a Toeplitz-type diagram");
}

void DiagramSpec::check_level(int n) const {
  if (n < 2 || n > depth())
    throw AnalysisError("level " + std::to_string(n) + " out of range 2.." +
                        std::to_string(depth()));
}

void DiagramSpec::check_window(int m, int n) const {
  if (m < 1 || m >= n || n > depth())
    throw AnalysisError("window (" + std::to_string(m) + "," +
                        std::to_string(n) + ") out of range, depth " +
                        std::to_string(depth()));
}

void DiagramSpec::check_vertex(int t) const {
  if (t < 1 || t > d_)
    throw AnalysisError("vertex " + std::to_string(t) + " out of range 1.." +
                        std::to_string(d_));
}

PropernessReport validate_properness(const DiagramSpec& spec) {
  PropernessReport rep;
  const int d = spec.rank();
  for (int n = 2; n <= spec.depth(); ++n) {
    PropernessReport::LevelDetail det;
    det.level = n;
    for (int t = 1; t <= d; ++t) {
      const OrderWord& w = spec.word(n, t);
      det.first_letters.push_back(w.first_letter());
      det.last_letters.push_back(w.last_letter());
      const auto counts = w.letter_counts(d);
      for (int u = 1; u <= d; ++u)
        if (counts[static_cast<std::size_t>(u - 1)] == 0)
          det.missing.emplace_back(t, u);
    }
    det.h2_ok = det.missing.empty();
    det.h4_ok = std::all_of(det.last_letters.begin(), det.last_letters.end(),
                            [&](int v) { return v == det.last_letters[0]; });
    det.min_ok = std::all_of(det.first_letters.begin(), det.first_letters.end(),
                             [&](int v) { return v == det.first_letters[0]; });
    rep.h2_ok = rep.h2_ok && det.h2_ok;
    rep.h4_ok = rep.h4_ok && det.h4_ok;
    rep.unique_min_ok = rep.unique_min_ok && det.min_ok;
    rep.levels.push_back(std::move(det));
  }
  return rep;
}

IntMatrix incidence_matrix(const DiagramSpec& spec, int n) {
  spec.check_level(n);
  IntMatrix m(spec.rank());
  for (int t2 = 1; t2 <= spec.rank(); ++t2) {
    const auto counts = spec.word(n, t2).letter_counts(spec.rank());
    for (int t1 = 1; t1 <= spec.rank(); ++t1)
      m.at(t1, t2) = counts[static_cast<std::size_t>(t1 - 1)];
  }
  return m;
}

IntMatrix product_matrix(const DiagramSpec& spec, int m, int n) {
  if (m < 1 || m > n || n > spec.depth())
    throw AnalysisError("product_matrix: bad window (" + std::to_string(m) +
                        "," + std::to_string(n) + ")");
  IntMatrix p = IntMatrix::identity(spec.rank());
  for (int lev = m + 1; lev <= n; ++lev) p = p * incidence_matrix(spec, lev);
  return p;
}

namespace {

// body^repeat appended onto out, within the block budget. The body is the
// composition of one source block; flattening it is bounded separately from
// unrolling so that huge repeats of short bodies stay cheap.
void append_power(std::vector<WordBlock>& out, std::vector<WordBlock> body,
                  const BigInt& repeat, const ComposeLimits& limits) {
  if (repeat == 0 || body.empty()) return;
  if (repeat == 1) {
    for (auto& b : body) out.push_back(std::move(b));
  } else if (body.size() == 1) {
    out.push_back(WordBlock{std::move(body[0].letters),
                            body[0].repeat * repeat});
  } else {
    BigInt flat_len = 0;
    for (const auto& b : body) flat_len += BigInt(b.letters.size()) * b.repeat;
    if (flat_len <= limits.max_flat_letters) {
      std::vector<int> letters;
      letters.reserve(flat_len.convert_to<std::size_t>());
      for (const auto& b : body) {
        const std::uint64_t r = b.repeat.convert_to<std::uint64_t>();
        for (std::uint64_t i = 0; i < r; ++i)
          letters.insert(letters.end(), b.letters.begin(), b.letters.end());
      }
      out.push_back(WordBlock{std::move(letters), repeat});
    } else if (repeat * body.size() <= limits.max_blocks) {
      const std::uint64_t r = repeat.convert_to<std::uint64_t>();
      for (std::uint64_t i = 0; i < r; ++i)
        for (const auto& b : body) out.push_back(b);
    } else {
      throw ExpansionError(
          "compose_words: block budget exceeded while composing a repeat of " +
          repeat.str() + " bodies of " + std::to_string(body.size()) +
          " blocks");
    }
  }
  if (out.size() > limits.max_blocks)
    throw ExpansionError("compose_words: composed word exceeds block budget");
}

}  // namespace

OrderWord compose_words(const DiagramSpec& spec, int m, int n, int t,
                        const ComposeLimits& limits) {
  spec.check_window(m, n);
  spec.check_vertex(t);
  if (n == m + 1) return spec.word(n, t);
  // W_{m,n}(t) concatenates W_{m,n-1}(u) over the letters u of w_n(t).
  std::vector<OrderWord> lower(static_cast<std::size_t>(spec.rank()));
  std::vector<bool> have(static_cast<std::size_t>(spec.rank()), false);
  const OrderWord& top = spec.word(n, t);
  std::vector<WordBlock> out;
  for (const auto& blk : top.blocks()) {
    std::vector<WordBlock> body;
    for (int u : blk.letters) {
      if (!have[static_cast<std::size_t>(u - 1)]) {
        lower[static_cast<std::size_t>(u - 1)] =
            compose_words(spec, m, n - 1, u, limits);
        have[static_cast<std::size_t>(u - 1)] = true;
      }
      const auto& wb = lower[static_cast<std::size_t>(u - 1)].blocks();
      body.insert(body.end(), wb.begin(), wb.end());
    }
    append_power(out, std::move(body), blk.repeat, limits);
  }
  return OrderWord(std::move(out));
}

DiagramSpec telescope(const DiagramSpec& spec, const std::vector<int>& cut_levels,
                      const ComposeLimits& limits) {
  if (cut_levels.size() < 2 || cut_levels.front() != 1)
    throw AnalysisError("telescope: need cut levels starting at 1 with at "
                        "least one further level");
  for (std::size_t i = 0; i + 1 < cut_levels.size(); ++i)
    if (cut_levels[i] >= cut_levels[i + 1])
      throw AnalysisError("telescope: cut levels must be strictly increasing");
  if (cut_levels.back() > spec.depth())
    throw AnalysisError("telescope: cut level beyond diagram depth");
  spec.require_toeplitz("telescope");

  std::vector<LevelSpec> levels;
  for (std::size_t k = 1; k < cut_levels.size(); ++k) {
    const int lo = cut_levels[k - 1];
    const int hi = cut_levels[k];
    LevelSpec lv;
    lv.index = static_cast<int>(k) + 1;
    lv.q = spec.q_range(lo, hi);
    for (int t = 1; t <= spec.rank(); ++t)
      lv.words.push_back(compose_words(spec, lo, hi, t, limits));
    levels.push_back(std::move(lv));
  }
  return DiagramSpec(spec.rank(), std::move(levels));
}

DiagramSpec subdiagram_restrict(const DiagramSpec& spec,
                                const std::vector<int>& keep) {
  if (keep.empty()) throw AnalysisError("subdiagram_restrict: empty vertex set");
  std::set<int> kept(keep.begin(), keep.end());
  for (int t : kept) spec.check_vertex(t);

  std::vector<int> old_to_new(static_cast<std::size_t>(spec.rank()), 0);
  int next = 1;
  for (int t : kept) old_to_new[static_cast<std::size_t>(t - 1)] = next++;
  const int nd = static_cast<int>(kept.size());

  std::vector<LevelSpec> levels;
  for (int n = 2; n <= spec.depth(); ++n) {
    LevelSpec lv;
    lv.index = n;
    std::optional<BigInt> common;
    bool uniform = true;
    for (int t : kept) {
      OrderWord w = spec.word(n, t).filtered(old_to_new);
      if (w.empty())
        throw AnalysisError("subdiagram_restrict: word of vertex " +
                            std::to_string(t) + " at level " +
                            std::to_string(n) +
                            " becomes empty (disconnected subdiagram)");
      if (!common)
        common = w.length();
      else if (*common != w.length())
        uniform = false;
      lv.words.push_back(std::move(w));
    }
    lv.q = uniform ? *common : BigInt(0);
    levels.push_back(std::move(lv));
  }
  return DiagramSpec(nd, std::move(levels));
}

}  // namespace adicscope

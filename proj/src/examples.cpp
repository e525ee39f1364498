#include "adicscope/examples.hpp"

#include <algorithm>
#include <numeric>

#include "adicscope/errors.hpp"

namespace adicscope {

namespace {

std::vector<int> letters(const char* digits) {
  std::vector<int> out;
  for (const char* p = digits; *p; ++p) out.push_back(*p - '0');
  return out;
}

WordBlock rep(const char* digits, const BigInt& count) {
  return WordBlock{letters(digits), count};
}

WordBlock run(const char* digits) { return rep(digits, 1); }

OrderWord level2_word() {
  // Starts and ends with 1, contains every letter; identical for all
  // vertices, which makes (H2), (H4) and the unique minimal path immediate.
  return OrderWord({run("1"), rep("2345671", 7)});
}

BigInt q_at(int level) {
  if (level == 2) return 50;
  BigInt q = 1;
  for (int i = 0; i < 2 * level; ++i) q *= 5;
  return q;
}

std::vector<OrderWord> words_example2(const BigInt& c) {
  return {
      OrderWord({rep("123456723756", c), run("1")}),
      OrderWord({run("1"), rep("312645372675", c - 1), rep("312", 3), run("671")}),
      OrderWord({run("1"), rep("123456723756", c - 1), rep("123", 3), run("451")}),
      OrderWord({rep("156423756723", c), run("1")}),
      OrderWord({run("1"), rep("345612375672", c - 1), rep("645", 3), run("311")}),
      OrderWord({run("1"), rep("156423756723", c - 1), rep("723", 3), run("121")}),
      OrderWord({rep("153426753726", c), run("1")}),
  };
}

std::vector<OrderWord> words_example3(const BigInt& c) {
  return {
      OrderWord({rep("123", c - 2), run("4567231")}),
      OrderWord({run("13"), rep("123", c - 2), run("45671")}),
      OrderWord({run("1"), rep("123", c - 2), run("456721")}),
      OrderWord({run("146"), rep("456", c - 2), run("7231")}),
      OrderWord({run("14"), rep("456", c - 2), run("12371")}),
      OrderWord({run("1"), rep("456", c - 2), run("123761")}),
      OrderWord({run("156"), rep("456", c - 2), run("7231")}),
  };
}

std::vector<OrderWord> words_example4(const BigInt& c, const BigInt& q) {
  // w(3) and w(6) are printed with exponent c-2, which is 12 letters short of
  // q; the sibling words all use c-1 with the same tail shapes, so the
  // builder uses c-1 there (noted in the example metadata).
  return {
      OrderWord({rep("123456423156", c - 1), rep("123", 3), run("7561")}),
      OrderWord({run("1"), rep("312645342615", c - 1), rep("312", 3), run("671")}),
      OrderWord({run("1"), rep("123456423156", c - 1), rep("123", 3), run("751")}),
      OrderWord({rep("156423456123", c - 1), rep("123", 3), run("7561")}),
      OrderWord({run("1"), rep("345612315642", c - 1), rep("645", 3), run("371")}),
      OrderWord({run("1"), rep("156423456123", c - 1), rep("123", 3), run("721")}),
      OrderWord({run("1"), rep("7", q - 7), run("654321")}),
  };
}

std::vector<OrderWord> words_example5(const BigInt& c) {
  return {
      OrderWord({rep("123", 4 * c - 2), run("1245671")}),
      OrderWord({run("1"), rep("312", 4 * c - 2), run("345671")}),
      OrderWord({run("1"), rep("123", 4 * c - 2), run("145671")}),
      OrderWord({run("1"), rep("5674", 3 * c - 2), run("23745671")}),
      OrderWord({run("15"), rep("7456", 3 * c - 2), run("7452371")}),
      OrderWord({run("15"), rep("4567", 3 * c - 2), run("2367471")}),
      OrderWord({run("12"), rep("5674", 3 * c - 2), run("3674571")}),
  };
}

std::vector<OrderWord> words_example6(const BigInt& c) {
  return {
      OrderWord({rep("123", 4 * c - 2), run("1245671")}),
      OrderWord({run("1"), rep("312", 4 * c - 2), run("345671")}),
      OrderWord({run("1"), rep("123", 4 * c - 2), run("145671")}),
      OrderWord({run("1"), rep("647465", 2 * c - 1), run("237461")}),
      OrderWord({run("1"), rep("656574", 2 * c - 1), run("652361")}),
      OrderWord({run("16"), rep("646575", 2 * c - 1), run("72361")}),
      OrderWord({run("16"), rep("757564", 2 * c - 1), run("73261")}),
  };
}

}  // namespace

std::pair<DiagramSpec, ExampleMeta> build_example(int id, int depth) {
  if (id < 1 || id > 6)
    throw AnalysisError("build_example: id must be in 1..6");
  if (depth < 3)
    throw AnalysisError("build_example: depth must be >= 3");

  ExampleMeta meta;
  meta.id = id;
  const int word_id = id == 1 ? 2 : id;
  if (id == 1)
    meta.notes.push_back(
        "example 1 is a construction scheme; this is its example-2 instance");
  if (id == 4)
    meta.notes.push_back(
        "words 3 and 6 rebuilt with exponent c-1 to restore length q (the "
        "printed exponent c-2 is 12 letters short)");

  switch (id) {
    case 1:
    case 2:
      meta.measures.push_back({{1, 2, 3, 4, 5, 6, 7}, {{6, 3}}});
      meta.uniquely_ergodic = true;
      break;
    case 3:
      meta.measures.push_back({{1, 2, 3}, {{6, 3}}});
      meta.measures.push_back({{4, 5, 6}, {{6, 3}}});
      break;
    case 4:
      meta.measures.push_back({{1, 2, 3, 4, 5, 6}, {{6, 3}}});
      meta.measures.push_back({{7}, {}});
      break;
    case 5:
      meta.measures.push_back({{1, 2, 3}, {{6, 3}}});
      meta.measures.push_back({{4, 5, 6, 7}, {{8, 4}}});
      break;
    case 6:
      meta.measures.push_back({{1, 2, 3}, {{6, 3}}});
      meta.measures.push_back({{4, 5, 6, 7}, {{4, 2}}});
      meta.notes.push_back("exp(2 pi i / 8) is not an eigenvalue here");
      break;
  }

  std::vector<LevelSpec> levels;
  {
    LevelSpec lv;
    lv.index = 2;
    lv.q = q_at(2);
    for (int t = 0; t < 7; ++t) lv.words.push_back(level2_word());
    levels.push_back(std::move(lv));
  }
  for (int n = 3; n <= depth; ++n) {
    LevelSpec lv;
    lv.index = n;
    lv.q = q_at(n);
    const BigInt c = word_id == 3 ? (lv.q - 1) / 3 : (lv.q - 1) / 12;
    switch (word_id) {
      case 2: lv.words = words_example2(c); break;
      case 3: lv.words = words_example3(c); break;
      case 4: lv.words = words_example4(c, lv.q); break;
      case 5: lv.words = words_example5(c); break;
      case 6: lv.words = words_example6(c); break;
    }
    levels.push_back(std::move(lv));
  }
  return {DiagramSpec(7, std::move(levels)), std::move(meta)};
}

int model_class(int vertex) {
  switch (vertex) {
    case 1: case 4: case 7: return 1;
    case 2: case 5: return 2;
    case 3: case 6: return 3;
  }
  throw AnalysisError("model_class: vertex outside 1..7");
}

KMap model_kmap() {
  std::vector<std::vector<long>> table(7, std::vector<long>(7, 0));
  for (int t1 = 1; t1 <= 7; ++t1)
    for (int t2 = 1; t2 <= 7; ++t2)
      table[static_cast<std::size_t>(t1 - 1)][static_cast<std::size_t>(t2 - 1)] =
          ((model_class(t2) - model_class(t1)) % 3 + 3) % 3;
  return KMap::from_table(7, 3, 6, table);
}

namespace {

// Mismatches between the letter classes of `w` and the cyclic class pattern
// starting at `rot`, counted over the run-length blocks.
BigInt pattern_mismatches(const OrderWord& w, int rot) {
  BigInt mism = 0;
  BigInt offset = 0;
  for (const auto& blk : w.blocks()) {
    const long len = static_cast<long>(blk.letters.size());
    const long step = len % 3;
    for (long i = 0; i < len; ++i) {
      const int cl = model_class(blk.letters[static_cast<std::size_t>(i)]) - 1;
      const long base =
          mod_floor_long(BigInt(rot) + offset + i, 3);
      if (step == 0) {
        if (cl != base) mism += blk.repeat;
      } else {
        // expected class walks by `step` per copy; period 3 over copies.
        const long copies = blk.repeat < 3 ? blk.repeat.convert_to<long>() : 3;
        for (long c0 = 0; c0 < copies; ++c0)
          if (cl != (base + c0 * step) % 3)
            mism += (blk.repeat - 1 - c0) / 3 + 1;
      }
    }
    offset += BigInt(len) * blk.repeat;
  }
  return mism;
}

}  // namespace

ConformanceReport model_conformance(const DiagramSpec& spec, long L_bound) {
  if (spec.rank() != 7)
    throw AnalysisError("model_conformance: the model scheme has rank 7");
  ConformanceReport rep;
  rep.L_bound = L_bound;
  rep.kmap = model_kmap();
  for (int n = 3; n <= spec.depth(); ++n) {
    for (int t = 1; t <= 7; ++t) {
      ConformanceReport::Row row;
      row.level = n;
      row.vertex = t;
      row.scheme_mismatches =
          pattern_mismatches(spec.word(n, t), model_class(t) - 1);
      row.best_mismatches = row.scheme_mismatches;
      for (int rot = 0; rot < 3; ++rot)
        row.best_mismatches = std::min(
            row.best_mismatches, pattern_mismatches(spec.word(n, t), rot));
      row.ok = row.best_mismatches <= L_bound;
      rep.pass = rep.pass && row.ok;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

}  // namespace adicscope

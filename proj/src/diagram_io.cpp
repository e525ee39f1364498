#include "adicscope/diagram_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "adicscope/errors.hpp"

namespace adicscope {

namespace {

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw InputError("line " + std::to_string(line_no) + ": " + msg);
}

std::string strip(const std::string& raw) {
  std::string s = raw;
  if (const auto hash = s.find('#'); hash != std::string::npos)
    s.erase(hash);
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

BigInt parse_int(const std::string& tok, int line_no) {
  if (tok.empty()) fail(line_no, "expected an integer");
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(line_no, "bad integer token '" + tok + "'");
  return BigInt(tok);
}

// Word tokens: bare vertex integers and (v1 v2 ... vk)^r repetition groups.
OrderWord parse_word_tokens(const std::string& body, int line_no) {
  std::vector<WordBlock> blocks;
  std::vector<int> run;  // pending bare letters
  std::size_t i = 0;
  const auto flush_run = [&] {
    if (!run.empty()) {
      blocks.push_back(WordBlock{run, 1});
      run.clear();
    }
  };
  const auto read_uint = [&]() -> BigInt {
    std::size_t j = i;
    while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j])))
      ++j;
    if (j == i) fail(line_no, "expected a number in word");
    BigInt v(body.substr(i, j - i));
    i = j;
    return v;
  };
  while (i < body.size()) {
    const char c = body[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      run.push_back(to_long_checked(read_uint()));
    } else if (c == '(') {
      flush_run();
      ++i;
      std::vector<int> letters;
      while (true) {
        while (i < body.size() &&
               std::isspace(static_cast<unsigned char>(body[i])))
          ++i;
        if (i >= body.size()) fail(line_no, "unterminated '(' group");
        if (body[i] == ')') break;
        letters.push_back(to_long_checked(read_uint()));
      }
      ++i;  // ')'
      if (i >= body.size() || body[i] != '^')
        fail(line_no, "repetition group must be followed by ^<count>");
      ++i;
      const BigInt rep = read_uint();
      if (letters.empty()) fail(line_no, "empty repetition group");
      blocks.push_back(WordBlock{std::move(letters), rep});
    } else {
      fail(line_no, std::string("unexpected character '") + c + "' in word");
    }
  }
  flush_run();
  OrderWord w{std::move(blocks)};
  if (w.empty()) fail(line_no, "word has no letters");
  return w;
}

}  // namespace

DiagramSpec parse_spec(std::istream& in) {
  std::string raw;
  int line_no = 0;
  const auto next_line = [&](std::string& out) -> bool {
    while (std::getline(in, raw)) {
      ++line_no;
      out = strip(raw);
      if (!out.empty()) return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line) || line != "adic-diagram v1")
    fail(line_no == 0 ? 1 : line_no, "expected header 'adic-diagram v1'");

  std::string kw;
  int rank = 0, depth = 0;
  {
    if (!next_line(line)) fail(line_no, "expected 'rank <d>'");
    std::istringstream ss(line);
    ss >> kw >> rank;
    if (ss.fail() || kw != "rank" || rank < 1)
      fail(line_no, "expected 'rank <d>'");
  }
  {
    if (!next_line(line)) fail(line_no, "expected 'levels <N>'");
    std::istringstream ss(line);
    ss >> kw >> depth;
    if (ss.fail() || kw != "levels" || depth < 1)
      fail(line_no, "expected 'levels <N>'");
  }

  std::vector<LevelSpec> levels;
  std::map<int, int> seen_levels;  // level -> line
  for (int n = 2; n <= depth; ++n) {
    if (!next_line(line)) fail(line_no, "missing 'level' block for level " +
                                            std::to_string(n));
    std::istringstream ss(line);
    int idx = 0;
    std::string qtok;
    ss >> kw >> idx;
    if (ss.fail() || kw != "level") fail(line_no, "expected 'level <n> q <q>'");
    ss >> kw >> qtok;
    if (ss.fail() || kw != "q") fail(line_no, "expected 'q <value>' after level");
    if (seen_levels.count(idx))
      fail(line_no, "duplicate level " + std::to_string(idx));
    seen_levels[idx] = line_no;
    if (idx != n)
      fail(line_no, "levels must appear in order; expected level " +
                        std::to_string(n));
    LevelSpec lv;
    lv.index = n;
    lv.q = parse_int(qtok, line_no);

    std::map<int, OrderWord> words;
    for (int k = 0; k < rank; ++k) {
      if (!next_line(line))
        fail(line_no, "missing word line for level " + std::to_string(n));
      std::istringstream ws(line);
      int t = 0;
      ws >> kw >> t;
      if (ws.fail() || kw != "word")
        fail(line_no, "expected 'word <t> <letters...>'");
      if (t < 1 || t > rank)
        fail(line_no, "word vertex " + std::to_string(t) + " out of range 1.." +
                          std::to_string(rank));
      if (words.count(t))
        fail(line_no, "duplicate word for vertex " + std::to_string(t));
      std::string rest;
      std::getline(ws, rest);
      OrderWord w = parse_word_tokens(rest, line_no);
      if (w.max_letter() > rank)
        fail(line_no, "word uses vertex symbol > rank");
      if (lv.q != 0 && w.length() != lv.q)
        fail(line_no, "word length " + w.length().str() +
                          " does not match declared q " + lv.q.str());
      words.emplace(t, std::move(w));
    }
    for (int t = 1; t <= rank; ++t) {
      auto it = words.find(t);
      if (it == words.end())
        fail(line_no, "missing word for vertex " + std::to_string(t) +
                          " at level " + std::to_string(n));
      lv.words.push_back(std::move(it->second));
    }
    levels.push_back(std::move(lv));
  }
  if (next_line(line)) fail(line_no, "trailing content after last level");
  return DiagramSpec(rank, std::move(levels));
}

DiagramSpec parse_spec_string(const std::string& text) {
  std::istringstream in(text);
  return parse_spec(in);
}

DiagramSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file '" + path + "'");
  return parse_spec(in);
}

std::string serialize_spec(const DiagramSpec& spec) {
  std::ostringstream out;
  out << "adic-diagram v1\n";
  out << "rank " << spec.rank() << "\n";
  out << "levels " << spec.depth() << "\n";
  for (int n = 2; n <= spec.depth(); ++n) {
    const LevelSpec& lv = spec.level(n);
    out << "level " << n << " q " << lv.q.str() << "\n";
    for (int t = 1; t <= spec.rank(); ++t) {
      out << "word " << t;
      for (const auto& b : spec.word(n, t).blocks()) {
        if (b.repeat == 1) {
          for (int v : b.letters) out << ' ' << v;
        } else {
          out << " (";
          for (std::size_t i = 0; i < b.letters.size(); ++i)
            out << (i ? " " : "") << b.letters[i];
          out << ")^" << b.repeat.str();
        }
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace adicscope

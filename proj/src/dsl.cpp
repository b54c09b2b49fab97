#include "gshift/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gshift {

namespace {

struct Token {
  enum Kind { Ident, Number, Sym, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

struct Segment {
  std::string text;
  int line;
  int col;  // 1-based column of the segment start
};

// Strip comments, split on newlines and ';', keep source locations.
std::vector<Segment> split_segments(const std::string& text) {
  std::vector<Segment> out;
  int line = 1;
  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    std::string l = raw;
    if (auto hash = l.find('#'); hash != std::string::npos) l = l.substr(0, hash);
    std::size_t start = 0;
    while (start <= l.size()) {
      std::size_t semi = l.find(';', start);
      std::size_t end = semi == std::string::npos ? l.size() : semi;
      std::string seg = l.substr(start, end - start);
      // Trim and keep the column of the first kept character.
      std::size_t first = seg.find_first_not_of(" \t");
      if (first != std::string::npos) {
        std::size_t last = seg.find_last_not_of(" \t");
        out.push_back({seg.substr(first, last - first + 1),
                       line, static_cast<int>(start + first + 1)});
      }
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    ++line;
  }
  return out;
}

std::vector<Token> tokenize(const Segment& seg) {
  std::vector<Token> out;
  const std::string& s = seg.text;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    int col = seg.col + static_cast<int>(i);
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), seg.line, col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Number, s.substr(i, j - i), seg.line, col});
      i = j;
      continue;
    }
    auto two = s.substr(i, 2);
    if (two == ">=" || two == "<=" || two == "==" || two == "->") {
      out.push_back({Token::Sym, two, seg.line, col});
      i += 2;
      continue;
    }
    if (std::string("+-*^():<>=").find(c) != std::string::npos) {
      out.push_back({Token::Sym, std::string(1, c), seg.line, col});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", seg.line, col);
  }
  out.push_back({Token::End, "", seg.line, seg.col + static_cast<int>(s.size())});
  return out;
}

struct TokStream {
  std::vector<Token> toks;
  std::size_t i = 0;

  const Token& peek() const { return toks[i]; }
  const Token& next() { return toks[i + 1 < toks.size() ? i++ : i]; }
  bool at_end() const { return peek().kind == Token::End; }

  bool accept_sym(const std::string& s) {
    if (peek().kind == Token::Sym && peek().text == s) {
      ++i;
      return true;
    }
    return false;
  }
  void expect_sym(const std::string& s) {
    if (!accept_sym(s))
      throw ParseError("expected '" + s + "'", peek().line, peek().col);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }
};

Int parse_signed_int(TokStream& ts) {
  bool neg = false;
  if (ts.accept_sym("-"))
    neg = true;
  else
    ts.accept_sym("+");
  if (ts.peek().kind != Token::Number) ts.fail("expected integer");
  Int v = *parse_int(ts.next().text);
  return neg ? Int(-v) : v;
}

Poly parse_expr(TokStream& ts);

Poly parse_factor(TokStream& ts) {
  Poly base;
  const Token& t = ts.peek();
  if (t.kind == Token::Ident && t.text == "n") {
    ts.next();
    base = Poly::variable();
  } else if (t.kind == Token::Number) {
    base = Poly::constant(*parse_int(ts.next().text));
  } else if (ts.accept_sym("(")) {
    base = parse_expr(ts);
    ts.expect_sym(")");
  } else {
    ts.fail("expected 'n', integer or '('");
  }
  if (ts.accept_sym("^")) {
    if (ts.peek().kind != Token::Number) ts.fail("expected exponent");
    unsigned long e = std::stoul(ts.next().text);
    Poly r = Poly::constant(1);
    for (unsigned long k = 0; k < e; ++k) r = r * base;
    return r;
  }
  return base;
}

Poly parse_term(TokStream& ts) {
  Poly p = parse_factor(ts);
  while (ts.accept_sym("*")) p = p * parse_factor(ts);
  return p;
}

Poly parse_expr(TokStream& ts) {
  bool neg = ts.accept_sym("-");
  if (!neg) ts.accept_sym("+");
  Poly p = parse_term(ts);
  if (neg) p = -p;
  while (true) {
    if (ts.accept_sym("+"))
      p = p + parse_term(ts);
    else if (ts.accept_sym("-"))
      p = p - parse_term(ts);
    else
      break;
  }
  return p;
}

Interval parse_condition(TokStream& ts) {
  const Token& t = ts.peek();
  if (t.kind == Token::Ident && t.text == "all") {
    ts.next();
    return Interval::all();
  }
  if (t.kind == Token::Ident && t.text == "n") {
    ts.next();
    if (ts.accept_sym(">=")) return Interval::at_least(parse_signed_int(ts));
    if (ts.accept_sym("<=")) return Interval::at_most(parse_signed_int(ts));
    if (ts.accept_sym("==")) return Interval::point(parse_signed_int(ts));
    ts.fail("expected '>=', '<=' or '==' after n");
  }
  Int a = parse_signed_int(ts);
  ts.expect_sym("<=");
  if (!(ts.peek().kind == Token::Ident && ts.peek().text == "n")) ts.fail("expected 'n'");
  ts.next();
  ts.expect_sym("<=");
  Int b = parse_signed_int(ts);
  if (a > b) ts.fail("empty condition: " + to_string(a) + "<=n<=" + to_string(b));
  return Interval::between(a, b);
}

struct MapBuilder {
  std::vector<Piece> pieces;
  std::map<Int, Int> exceptions;
  int first_line = 1;

  IndexMap build() const {
    try {
      return IndexMap::from_pieces(pieces, exceptions);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), first_line, 1);
    }
  }
};

// A single `piece` or `except` statement.
void parse_statement(TokStream& ts, MapBuilder& b, unsigned max_degree) {
  const Token& head = ts.peek();
  if (head.kind != Token::Ident) ts.fail("expected 'piece' or 'except'");
  if (head.text == "piece") {
    ts.next();
    Interval cond = parse_condition(ts);
    ts.expect_sym(":");
    const Token& poly_tok = ts.peek();
    Poly p = parse_expr(ts);
    if (!ts.at_end()) ts.fail("trailing input after polynomial");
    if (static_cast<unsigned>(p.degree()) > max_degree)
      throw ParseError("degree " + std::to_string(p.degree()) + " exceeds maximum " +
                           std::to_string(max_degree),
                       poly_tok.line, poly_tok.col);
    b.pieces.push_back({cond, std::move(p)});
    return;
  }
  if (head.text == "except") {
    ts.next();
    const Token& at = ts.peek();
    Int k = parse_signed_int(ts);
    ts.expect_sym("->");
    Int v = parse_signed_int(ts);
    if (!ts.at_end()) ts.fail("trailing input after exception");
    if (b.exceptions.count(k))
      throw ParseError("duplicate exception for " + to_string(k), at.line, at.col);
    b.exceptions.emplace(std::move(k), std::move(v));
    return;
  }
  ts.fail("expected 'piece' or 'except', got '" + head.text + "'");
}

}  // namespace

IndexMap parse_map(const std::string& text, unsigned max_degree) {
  auto segments = split_segments(text);
  MapBuilder b;
  bool any = false;
  for (const Segment& seg : segments) {
    TokStream ts{tokenize(seg)};
    if (ts.at_end()) continue;
    if (!any) b.first_line = seg.line;
    any = true;
    parse_statement(ts, b, max_degree);
  }
  if (!any) throw ParseError("empty map definition", 1, 1);
  return b.build();
}

namespace {

std::vector<std::string> whitespace_split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

void parse_param(const Segment& seg, FileParams& params) {
  auto words = whitespace_split(seg.text);
  if (words.size() != 3)
    throw ParseError("expected 'param <key> <value>'", seg.line, seg.col);
  const std::string& key = words[1];
  const std::string& val = words[2];

  auto positive_count = [&](const std::string& v) -> std::size_t {
    auto n = parse_int(v);
    if (!n || *n < 1) throw ParseError("param " + key + " must be a positive integer", seg.line, seg.col);
    return static_cast<std::size_t>(n->get_ui());
  };
  auto range_pair = [&](const std::string& v) -> std::pair<Int, Int> {
    auto dots = v.find("..");
    if (dots == std::string::npos)
      throw ParseError("param " + key + " expects LO..HI", seg.line, seg.col);
    auto lo = parse_int(v.substr(0, dots));
    auto hi = parse_int(v.substr(dots + 2));
    if (!lo || !hi || *lo > *hi)
      throw ParseError("param " + key + " expects LO..HI with LO<=HI", seg.line, seg.col);
    return {*lo, *hi};
  };

  if (key == "budget_orbit") {
    params.budget_orbit = positive_count(val);
  } else if (key == "budget_closure") {
    params.budget_closure = positive_count(val);
  } else if (key == "probes") {
    auto [lo, hi] = range_pair(val);
    params.probes_lo = lo;
    params.probes_hi = hi;
  } else if (key == "window") {
    auto [lo, hi] = range_pair(val);
    params.window_lo = lo;
    params.window_hi = hi;
  } else if (key == "max_h") {
    auto n = parse_int(val);
    if (!n || *n < 0) throw ParseError("param max_h must be >= 0", seg.line, seg.col);
    params.max_h = *n;
  } else if (key == "seed") {
    auto n = parse_int(val);
    if (!n || *n < 0) throw ParseError("param seed must be >= 0", seg.line, seg.col);
    params.seed = n->get_ui();
  } else if (key == "max_degree") {
    params.max_degree = static_cast<unsigned>(positive_count(val));
  } else {
    throw ParseError("unknown param '" + key + "'", seg.line, seg.col);
  }
}

}  // namespace

PresentationFile parse_presentation(const std::string& text) {
  auto segments = split_segments(text);

  FileParams params;
  for (const Segment& seg : segments)
    if (seg.text.rfind("param", 0) == 0 &&
        (seg.text.size() == 5 || std::isspace(static_cast<unsigned char>(seg.text[5]))))
      parse_param(seg, params);
  unsigned max_degree = params.max_degree.value_or(kDefaultMaxDegree);

  std::vector<Generator> gens;
  std::optional<std::string> cur_name;
  MapBuilder builder;

  auto finish = [&]() {
    if (!cur_name) return;
    gens.push_back({*cur_name, builder.build()});
    builder = MapBuilder{};
    cur_name.reset();
  };

  for (const Segment& seg : segments) {
    TokStream ts{tokenize(seg)};
    if (ts.at_end()) continue;
    const Token& head = ts.peek();
    if (head.kind == Token::Ident && head.text == "param") continue;
    if (head.kind == Token::Ident && head.text == "map") {
      ts.next();
      if (ts.peek().kind != Token::Ident) ts.fail("expected generator name");
      std::string name = ts.next().text;
      ts.expect_sym(":");
      finish();
      for (const auto& g : gens)
        if (g.name == name)
          throw ParseError("duplicate generator '" + name + "'", head.line, head.col);
      cur_name = name;
      builder.first_line = seg.line;
      if (!ts.at_end()) parse_statement(ts, builder, max_degree);
      continue;
    }
    if (!cur_name)
      throw ParseError("statement outside of a map definition", head.line, head.col);
    parse_statement(ts, builder, max_degree);
  }
  finish();

  if (gens.empty()) throw ParseError("presentation file defines no generators", 1, 1);
  return PresentationFile{Presentation(std::move(gens)), params};
}

}  // namespace gshift

#include "worms/parser.hpp"

#include <bit>
#include <cctype>

#include "worms/pseudo.hpp"

namespace worms {

namespace {

struct Token {
  enum Kind { End, Num, Ident, Gen, Plus, Minus, Star, Slash, Caret, LP, RP };
  Kind kind = End;
  size_t pos = 0;
  Integer num = 0;
  std::string text;   // Ident
  uint8_t mask = 0;   // Gen
  std::string coord;  // Gen
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    Token t;
    t.pos = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Token::Num;
      t.num = Integer(s.substr(i, j - i));
      i = j;
    } else if (c == 'd' && i + 1 < s.size() && s[i + 1] == '{') {
      size_t j = i + 2;
      uint8_t mask = 0;
      int last = 0;
      bool expecting = true;
      while (j < s.size() && s[j] != '}') {
        if (std::isdigit(static_cast<unsigned char>(s[j]))) {
          if (!expecting)
            throw ParseError("malformed generator subset", j);
          int a = s[j] - '0';
          if (a < 1 || a > 8 || a <= last)
            throw ParseError("malformed generator subset", j);
          mask |= static_cast<uint8_t>(1u << (a - 1));
          last = a;
          expecting = false;
          ++j;
        } else if (s[j] == ',') {
          if (expecting) throw ParseError("malformed generator subset", j);
          expecting = true;
          ++j;
        } else {
          throw ParseError("malformed generator subset", j);
        }
      }
      if (j >= s.size() || mask == 0 || expecting)
        throw ParseError("malformed generator subset", i);
      ++j;  // consume '}'
      size_t k = j;
      while (k < s.size() && ident_char(s[k])) ++k;
      if (k == j) throw ParseError("generator needs a coordinate name", j);
      t.kind = Token::Gen;
      t.mask = mask;
      t.coord = s.substr(j, k - j);
      i = k;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      t.kind = Token::Ident;
      t.text = s.substr(i, j - i);
      i = j;
    } else {
      switch (c) {
        case '+': t.kind = Token::Plus; break;
        case '-': t.kind = Token::Minus; break;
        case '*': t.kind = Token::Star; break;
        case '/': t.kind = Token::Slash; break;
        case '^': t.kind = Token::Caret; break;
        case '(': t.kind = Token::LP; break;
        case ')': t.kind = Token::RP; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", i);
      }
      ++i;
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::End;
  end.pos = s.size();
  out.push_back(end);
  return out;
}

class WormParser {
 public:
  WormParser(const std::vector<Token>& toks, ChartPtr chart, bool scalar_mode)
      : toks_(toks), chart_(std::move(chart)), scalar_(scalar_mode) {}

  Worm run() {
    Worm w = expr();
    expect_end();
    return w;
  }

 private:
  const std::vector<Token>& toks_;
  ChartPtr chart_;
  bool scalar_;
  size_t i_ = 0;

  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }
  void expect_end() {
    if (peek().kind != Token::End)
      throw ParseError("unexpected trailing input", peek().pos);
  }

  ScalarExpr to_scalar(const Worm& w, size_t pos) {
    PseudoWorm p = PseudoWorm::from_worm(w);
    if (p.terms().empty()) return ScalarExpr();
    if (p.terms().size() == 1 && p.terms().begin()->first.gens.empty())
      return p.terms().begin()->second;
    throw ParseError("expected an expression without odd generators", pos);
  }

  int find_coord(const std::string& name) const {
    for (int i = 0; i < chart_->dim(); ++i)
      if (chart_->coords[i] == name) return i;
    return -1;
  }

  static bool is_scalar_worm(const Worm& w) {
    return w.terms().empty() ||
           (w.terms().size() == 1 && w.terms()[0].first.empty());
  }

  Worm expr() {
    Worm w = term();
    while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
      bool minus = take().kind == Token::Minus;
      Worm r = term();
      w = minus ? w - r : w + r;
    }
    return w;
  }

  Worm term() {
    Worm w = factor();
    while (peek().kind == Token::Star || peek().kind == Token::Slash) {
      const Token& op = take();
      Worm r = factor();
      if (op.kind == Token::Star) {
        w = w * r;
      } else {
        ScalarExpr s = to_scalar(r, op.pos);
        if (s.is_zero()) throw ParseError("division by zero", op.pos);
        w = (ScalarExpr::constant(1) / s) * w;
      }
    }
    return w;
  }

  Worm factor() {
    if (peek().kind == Token::Plus) { take(); return factor(); }
    if (peek().kind == Token::Minus) { take(); return -factor(); }
    return power();
  }

  Worm power() {
    Worm base = primary();
    if (peek().kind != Token::Caret) return base;
    size_t pos = take().pos;
    bool neg = false;
    if (peek().kind == Token::Minus) { take(); neg = true; }
    if (peek().kind != Token::Num)
      throw ParseError("expected an integer exponent", peek().pos);
    Integer n = take().num;
    if (n > 64) throw ParseError("exponent too large", pos);
    int e = n.convert_to<int>();
    if (neg) e = -e;
    if (is_scalar_worm(base))
      return Worm::scalar(chart_, base.scalar_part().pow(e));
    if (e < 0)
      throw ParseError("negative power of a generator", pos);
    Worm out = Worm::scalar(chart_, ScalarExpr::constant(1));
    for (int j = 0; j < e; ++j) out = out * base;
    return out;
  }

  Worm primary() {
    const Token& t = take();
    switch (t.kind) {
      case Token::Num:
        return Worm::scalar(chart_, ScalarExpr::constant(Rational(t.num)));
      case Token::LP: {
        Worm w = expr();
        if (peek().kind != Token::RP)
          throw ParseError("expected ')'", peek().pos);
        take();
        return w;
      }
      case Token::Gen: {
        if (scalar_)
          throw ParseError("generators are not allowed here", t.pos);
        if (static_cast<int>(t.mask) >= (1 << chart_->level))
          throw ParseError("generator index exceeds the chart level", t.pos);
        int ci = find_coord(t.coord);
        if (ci < 0) throw ParseError("unknown coordinate '" + t.coord + "'", t.pos);
        return Worm::generator(chart_, Generator{t.mask, ci});
      }
      case Token::Ident: {
        if (peek().kind == Token::LP) {
          auto f = func_from_name(t.text);
          if (!f) throw ParseError("unknown function '" + t.text + "'", t.pos);
          take();
          Worm arg = expr();
          if (peek().kind != Token::RP)
            throw ParseError("expected ')'", peek().pos);
          take();
          return Worm::scalar(chart_,
                              ScalarExpr::apply(*f, to_scalar(arg, t.pos)));
        }
        if (scalar_)
          return Worm::scalar(chart_, ScalarExpr::variable(t.text));
        int ci = find_coord(t.text);
        if (ci < 0)
          throw ParseError("unknown coordinate '" + t.text + "'", t.pos);
        return Worm::scalar(chart_, chart_->coord_expr(ci));
      }
      default:
        throw ParseError("unexpected token", t.pos);
    }
  }
};

}  // namespace

Worm parse_worm(const std::string& text, const ChartPtr& chart) {
  if (!chart) throw std::invalid_argument("null chart");
  return WormParser(lex(text), chart, false).run();
}

ScalarExpr parse_scalar(const std::string& text) {
  static const ChartPtr dummy = make_chart("scalars", {}, 0);
  return WormParser(lex(text), dummy, true).run().scalar_part();
}

std::string print_worm(const Worm& w) { return w.str(); }

OddVectorField parse_field(const std::string& text, int level) {
  std::vector<Token> toks = lex(text);
  std::vector<OddFieldTerm> terms;
  size_t i = 0;
  int outer_sign = 1;
  while (true) {
    // leading signs
    while (toks[i].kind == Token::Plus || toks[i].kind == Token::Minus) {
      if (toks[i].kind == Token::Minus) outer_sign = -outer_sign;
      ++i;
    }
    if (toks[i].kind == Token::End)
      throw ParseError("expected a field term", toks[i].pos);
    Rational coeff(outer_sign);
    uint8_t mask = 0;
    int perm_sign = 1;
    int dtheta = 0;
    bool zero = false;
    while (true) {
      const Token& t = toks[i];
      if (t.kind == Token::Num) {
        Rational c(t.num);
        ++i;
        if (toks[i].kind == Token::Slash) {
          ++i;
          if (toks[i].kind != Token::Num || toks[i].num == 0)
            throw ParseError("expected a nonzero denominator", toks[i].pos);
          c /= Rational(toks[i].num);
          ++i;
        }
        coeff *= c;
      } else if (t.kind == Token::Ident) {
        const std::string& s = t.text;
        bool theta = s.size() >= 2 && s[0] == 't';
        bool deriv = s.size() >= 2 && s[0] == 'D';
        int idx = 0;
        if (theta || deriv) {
          for (size_t j = 1; j < s.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(s[j]))) { idx = -1; break; }
            idx = idx * 10 + (s[j] - '0');
          }
        }
        if ((!theta && !deriv) || idx < 1 || idx > level)
          throw ParseError("unknown field symbol '" + s + "'", t.pos);
        if (dtheta != 0)
          throw ParseError("derivative factor must come last", t.pos);
        if (theta) {
          uint8_t bit = static_cast<uint8_t>(1u << (idx - 1));
          if (mask & bit) {
            zero = true;  // repeated theta annihilates the term
          } else {
            int above = std::popcount(static_cast<unsigned>(mask >> idx));
            if (above & 1) perm_sign = -perm_sign;
            mask |= bit;
          }
        } else {
          dtheta = idx;
        }
        ++i;
      } else {
        throw ParseError("expected a field factor", t.pos);
      }
      if (toks[i].kind == Token::Star) { ++i; continue; }
      break;
    }
    if (dtheta == 0)
      throw ParseError("field term needs a derivative factor", toks[i].pos);
    if (!zero && coeff != 0)
      terms.push_back(OddFieldTerm{coeff * perm_sign, mask, dtheta});
    outer_sign = 1;
    if (toks[i].kind == Token::End) break;
    if (toks[i].kind == Token::Plus || toks[i].kind == Token::Minus) continue;
    throw ParseError("unexpected token in field", toks[i].pos);
  }
  return OddVectorField(level, std::move(terms));
}

}  // namespace worms

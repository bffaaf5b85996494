#include "worms/scalar_expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace worms {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(Integer(text));
  Integer num(text.substr(0, slash));
  Integer den(text.substr(slash + 1));
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(num, den);
}

const char* func_name(FuncKind f) {
  switch (f) {
    case FuncKind::Sin: return "sin";
    case FuncKind::Cos: return "cos";
    case FuncKind::Exp: return "exp";
    case FuncKind::Log: return "log";
    case FuncKind::Sqrt: return "sqrt";
  }
  return "?";
}

std::optional<FuncKind> func_from_name(const std::string& name) {
  if (name == "sin") return FuncKind::Sin;
  if (name == "cos") return FuncKind::Cos;
  if (name == "exp") return FuncKind::Exp;
  if (name == "log") return FuncKind::Log;
  if (name == "sqrt") return FuncKind::Sqrt;
  return std::nullopt;
}

Atom Atom::make_var(std::string name) {
  Atom a;
  a.kind = Kind::Var;
  a.var = std::move(name);
  return a;
}

Atom Atom::make_func(FuncKind f, const ScalarExpr& argument) {
  Atom a;
  a.kind = Kind::Func;
  a.func = f;
  a.arg = std::make_shared<ScalarExpr>(argument);
  return a;
}

Atom Atom::make_sum_pow(const ScalarExpr& base) {
  Atom a;
  a.kind = Kind::SumPow;
  a.arg = std::make_shared<ScalarExpr>(base);
  return a;
}

int compare(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case Atom::Kind::Var:
      return a.var.compare(b.var) < 0 ? -1 : (a.var == b.var ? 0 : 1);
    case Atom::Kind::Func:
      if (a.func != b.func) return a.func < b.func ? -1 : 1;
      return compare(*a.arg, *b.arg);
    case Atom::Kind::SumPow:
      return compare(*a.arg, *b.arg);
  }
  return 0;
}

int compare(const ExprMonomial& a, const ExprMonomial& b) {
  size_t n = std::min(a.factors.size(), b.factors.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(a.factors[i].first, b.factors[i].first);
    if (c != 0) return c;
    if (a.factors[i].second != b.factors[i].second)
      return a.factors[i].second < b.factors[i].second ? -1 : 1;
  }
  if (a.factors.size() != b.factors.size())
    return a.factors.size() < b.factors.size() ? -1 : 1;
  return 0;
}

namespace {

// Canonicalizes a raw term list: sorts, merges duplicates, drops zeros.
std::vector<ScalarExpr::Term> combine_terms(std::vector<ScalarExpr::Term> v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    return compare(x.first, y.first) < 0;
  });
  std::vector<ScalarExpr::Term> out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && compare(out.back().first, t.first) == 0) {
      out.back().second += t.second;
      if (out.back().second == 0) out.pop_back();
    } else if (t.second != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

// Merges two sorted factor lists, adding exponents of equal atoms.
ExprMonomial merge_monomials(const ExprMonomial& a, const ExprMonomial& b) {
  ExprMonomial m;
  m.factors.reserve(a.factors.size() + b.factors.size());
  size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    int c;
    if (i == a.factors.size()) c = 1;
    else if (j == b.factors.size()) c = -1;
    else c = compare(a.factors[i].first, b.factors[j].first);
    if (c < 0) m.factors.push_back(a.factors[i++]);
    else if (c > 0) m.factors.push_back(b.factors[j++]);
    else {
      int e = a.factors[i].second + b.factors[j].second;
      if (e != 0) m.factors.emplace_back(a.factors[i].first, e);
      ++i; ++j;
    }
  }
  return m;
}

bool monomial_has_positive_sum_pow(const ExprMonomial& m) {
  for (const auto& [atom, e] : m.factors)
    if (atom.kind == Atom::Kind::SumPow && e > 0) return true;
  return false;
}

}  // namespace

ScalarExpr ScalarExpr::constant(Rational q) {
  ScalarExpr e;
  if (q != 0) e.terms_.push_back({ExprMonomial{}, std::move(q)});
  return e;
}

ScalarExpr ScalarExpr::variable(const std::string& name) {
  ScalarExpr e;
  ExprMonomial m;
  m.factors.emplace_back(Atom::make_var(name), 1);
  e.terms_.push_back({std::move(m), Rational(1)});
  return e;
}

ScalarExpr ScalarExpr::from_terms(std::vector<Term> terms) {
  // Expand any positive powers of sum atoms so the normal form stays flat.
  std::vector<Term> plain;
  ScalarExpr extra;
  bool has_extra = false;
  for (auto& t : terms) {
    if (!monomial_has_positive_sum_pow(t.first)) {
      plain.push_back(std::move(t));
      continue;
    }
    ScalarExpr piece = constant(t.second);
    ExprMonomial rest;
    for (auto& [atom, e] : t.first.factors) {
      if (atom.kind == Atom::Kind::SumPow && e > 0) {
        piece = piece * atom.arg->pow(e);
      } else {
        rest.factors.emplace_back(atom, e);
      }
    }
    ScalarExpr rest_expr;
    rest_expr.terms_.push_back({std::move(rest), Rational(1)});
    extra = extra + piece * rest_expr;
    has_extra = true;
  }
  ScalarExpr out;
  out.terms_ = combine_terms(std::move(plain));
  if (has_extra) out = out + extra;
  return out;
}

bool ScalarExpr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

std::optional<Rational> ScalarExpr::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].first.empty()) return terms_[0].second;
  return std::nullopt;
}

ScalarExpr ScalarExpr::operator-() const {
  ScalarExpr e = *this;
  for (auto& t : e.terms_) t.second = -t.second;
  return e;
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  std::vector<ScalarExpr::Term> v = a.terms_;
  v.insert(v.end(), b.terms_.begin(), b.terms_.end());
  ScalarExpr out;
  out.terms_ = combine_terms(std::move(v));
  return out;
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
  return a + (-b);
}

ScalarExpr operator*(const Rational& q, const ScalarExpr& e) {
  if (q == 0) return ScalarExpr();
  ScalarExpr out = e;
  for (auto& t : out.terms_) t.second *= q;
  return out;
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  std::vector<ScalarExpr::Term> v;
  v.reserve(a.terms_.size() * b.terms_.size());
  bool needs_expand = false;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      ExprMonomial m = merge_monomials(ta.first, tb.first);
      if (monomial_has_positive_sum_pow(m)) needs_expand = true;
      v.push_back({std::move(m), ta.second * tb.second});
    }
  }
  if (needs_expand) return ScalarExpr::from_terms(std::move(v));
  ScalarExpr out;
  out.terms_ = combine_terms(std::move(v));
  return out;
}

ScalarExpr ScalarExpr::pow(int e) const {
  if (e == 0) return constant(1);
  if (e > 0) {
    ScalarExpr base = *this, out = constant(1);
    int n = e;
    while (n > 0) {
      if (n & 1) out = out * base;
      base = (n >>= 1) > 0 ? base * base : base;
    }
    return out;
  }
  // negative power
  if (is_zero()) throw std::domain_error("negative power of zero expression");
  if (terms_.size() == 1) {
    const auto& [mono, coeff] = terms_[0];
    std::vector<Term> v(1);
    v[0].second = rational_pow(coeff, e);
    for (const auto& [atom, ex] : mono.factors)
      v[0].first.factors.emplace_back(atom, ex * e);
    return from_terms(std::move(v));
  }
  // factor out rational content so equal bases merge
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& t : terms_) {
    num_gcd = gcd(num_gcd, numerator(t.second));
    den_lcm = lcm(den_lcm, denominator(t.second));
  }
  Rational content(abs(num_gcd), den_lcm);
  if (terms_[0].second < 0) content = -content;
  ScalarExpr primitive = Rational(1) / content * *this;
  std::vector<Term> v(1);
  v[0].second = rational_pow(content, e);
  v[0].first.factors.emplace_back(Atom::make_sum_pow(primitive), e);
  return from_terms(std::move(v));
}

ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
  if (auto q = b.as_constant()) {
    if (*q == 0) throw std::domain_error("division by zero");
    return Rational(1) / *q * a;
  }
  return a * b.pow(-1);
}

ScalarExpr ScalarExpr::apply(FuncKind f, const ScalarExpr& arg) {
  if (auto q = arg.as_constant()) {
    switch (f) {
      case FuncKind::Sin:
        if (*q == 0) return ScalarExpr();
        break;
      case FuncKind::Cos:
        if (*q == 0) return constant(1);
        break;
      case FuncKind::Exp:
        if (*q == 0) return constant(1);
        break;
      case FuncKind::Log:
        if (*q == 1) return ScalarExpr();
        if (*q <= 0) throw std::domain_error("log of nonpositive constant");
        break;
      case FuncKind::Sqrt: {
        if (*q < 0) throw std::domain_error("sqrt of negative constant");
        Integer n = sqrt(numerator(*q)), d = sqrt(denominator(*q));
        if (n * n == numerator(*q) && d * d == denominator(*q))
          return constant(Rational(n, d));
        break;
      }
    }
  }
  ScalarExpr out;
  ExprMonomial m;
  m.factors.emplace_back(Atom::make_func(f, arg), 1);
  out.terms_.push_back({std::move(m), Rational(1)});
  return out;
}

ScalarExpr sin(const ScalarExpr& e) { return ScalarExpr::apply(FuncKind::Sin, e); }
ScalarExpr cos(const ScalarExpr& e) { return ScalarExpr::apply(FuncKind::Cos, e); }
ScalarExpr exp(const ScalarExpr& e) { return ScalarExpr::apply(FuncKind::Exp, e); }
ScalarExpr log(const ScalarExpr& e) { return ScalarExpr::apply(FuncKind::Log, e); }
ScalarExpr sqrt(const ScalarExpr& e) { return ScalarExpr::apply(FuncKind::Sqrt, e); }

namespace {

// d(atom)/d(var), not including the enclosing exponent.
ScalarExpr atom_derivative(const Atom& atom, const std::string& var) {
  switch (atom.kind) {
    case Atom::Kind::Var:
      return atom.var == var ? ScalarExpr::constant(1) : ScalarExpr();
    case Atom::Kind::Func: {
      ScalarExpr inner = atom.arg->derivative(var);
      if (inner.is_zero()) return ScalarExpr();
      switch (atom.func) {
        case FuncKind::Sin: return cos(*atom.arg) * inner;
        case FuncKind::Cos: return -(sin(*atom.arg) * inner);
        case FuncKind::Exp: return exp(*atom.arg) * inner;
        case FuncKind::Log: return inner * atom.arg->pow(-1);
        case FuncKind::Sqrt:
          return Rational(1, 2) * inner * sqrt(*atom.arg).pow(-1);
      }
      return ScalarExpr();
    }
    case Atom::Kind::SumPow:
      return atom.arg->derivative(var);
  }
  return ScalarExpr();
}

ScalarExpr atom_power(const Atom& atom, int e) {
  if (e == 0) return ScalarExpr::constant(1);
  std::vector<ScalarExpr::Term> v(1);
  v[0].second = Rational(1);
  v[0].first.factors.emplace_back(atom, e);
  return ScalarExpr::from_terms(std::move(v));
}

}  // namespace

ScalarExpr ScalarExpr::derivative(const std::string& var) const {
  ScalarExpr out;
  for (const auto& [mono, coeff] : terms_) {
    for (size_t j = 0; j < mono.factors.size(); ++j) {
      const auto& [atom, e] = mono.factors[j];
      ScalarExpr da = atom_derivative(atom, var);
      if (da.is_zero()) continue;
      ScalarExpr piece = constant(coeff * e) * da * atom_power(atom, e - 1);
      for (size_t l = 0; l < mono.factors.size(); ++l) {
        if (l == j) continue;
        piece = piece * atom_power(mono.factors[l].first,
                                   mono.factors[l].second);
      }
      out = out + piece;
    }
  }
  return out;
}

namespace {

double eval_atom(const Atom& atom, const std::map<std::string, double>& pt) {
  switch (atom.kind) {
    case Atom::Kind::Var: {
      auto it = pt.find(atom.var);
      if (it == pt.end()) throw EvalError("unbound variable: " + atom.var);
      return it->second;
    }
    case Atom::Kind::Func: {
      double u = atom.arg->eval(pt);
      switch (atom.func) {
        case FuncKind::Sin: return std::sin(u);
        case FuncKind::Cos: return std::cos(u);
        case FuncKind::Exp: return std::exp(u);
        case FuncKind::Log:
          if (u <= 0) throw EvalError("log of nonpositive value");
          return std::log(u);
        case FuncKind::Sqrt:
          if (u < 0) throw EvalError("sqrt of negative value");
          return std::sqrt(u);
      }
      return 0;
    }
    case Atom::Kind::SumPow:
      return atom.arg->eval(pt);
  }
  return 0;
}

}  // namespace

double ScalarExpr::eval(const std::map<std::string, double>& point) const {
  double total = 0;
  for (const auto& [mono, coeff] : terms_) {
    double v = rational_to_double(coeff);
    for (const auto& [atom, e] : mono.factors) {
      double a = eval_atom(atom, point);
      if (a == 0 && e < 0) throw EvalError("division by zero at point");
      v *= std::pow(a, e);
    }
    total += v;
  }
  return total;
}

ScalarExpr ScalarExpr::substitute(
    const std::map<std::string, ScalarExpr>& repl) const {
  ScalarExpr out;
  for (const auto& [mono, coeff] : terms_) {
    ScalarExpr piece = constant(coeff);
    for (const auto& [atom, e] : mono.factors) {
      ScalarExpr base;
      switch (atom.kind) {
        case Atom::Kind::Var: {
          auto it = repl.find(atom.var);
          base = it != repl.end() ? it->second : variable(atom.var);
          break;
        }
        case Atom::Kind::Func:
          base = apply(atom.func, atom.arg->substitute(repl));
          break;
        case Atom::Kind::SumPow:
          base = atom.arg->substitute(repl);
          break;
      }
      piece = piece * base.pow(e);
    }
    out = out + piece;
  }
  return out;
}

bool ScalarExpr::has_function_atoms() const {
  for (const auto& [mono, coeff] : terms_) {
    for (const auto& [atom, e] : mono.factors) {
      if (atom.kind == Atom::Kind::Func) return true;
      if (atom.kind == Atom::Kind::SumPow && atom.arg->has_function_atoms())
        return true;
    }
  }
  return false;
}

void ScalarExpr::collect_variables(std::set<std::string>& out) const {
  for (const auto& [mono, coeff] : terms_) {
    for (const auto& [atom, e] : mono.factors) {
      if (atom.kind == Atom::Kind::Var) out.insert(atom.var);
      else atom.arg->collect_variables(out);
    }
  }
}

std::set<std::string> ScalarExpr::variables() const {
  std::set<std::string> s;
  collect_variables(s);
  return s;
}

int compare(const ScalarExpr& a, const ScalarExpr& b) {
  size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(a.terms_[i].first, b.terms_[i].first);
    if (c != 0) return c;
    if (a.terms_[i].second != b.terms_[i].second)
      return a.terms_[i].second < b.terms_[i].second ? -1 : 1;
  }
  if (a.terms_.size() != b.terms_.size())
    return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

namespace {

std::string atom_str(const Atom& atom) {
  switch (atom.kind) {
    case Atom::Kind::Var: return atom.var;
    case Atom::Kind::Func:
      return std::string(func_name(atom.func)) + "(" + atom.arg->str() + ")";
    case Atom::Kind::SumPow:
      return "(" + atom.arg->str() + ")";
  }
  return "?";
}

std::string monomial_str(const ExprMonomial& m) {
  std::string s;
  for (const auto& [atom, e] : m.factors) {
    if (!s.empty()) s += "*";
    s += atom_str(atom);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

std::string ScalarExpr::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < terms_.size(); ++i) {
    const auto& [mono, coeff] = terms_[i];
    Rational c = coeff;
    if (i == 0) {
      if (c < 0) { s += "-"; c = -c; }
    } else {
      s += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    if (mono.empty()) {
      s += rational_str(c);
    } else {
      if (c != 1) s += rational_str(c) + "*";
      s += monomial_str(mono);
    }
  }
  return s;
}

bool expr_equal(const ScalarExpr& a, const ScalarExpr& b, unsigned seed,
                int points, double rel_tol) {
  ScalarExpr diff = a - b;
  if (diff.is_zero()) return true;
  if (!a.has_function_atoms() && !b.has_function_atoms()) return false;
  // probabilistic certification at random regular points
  std::set<std::string> vars = a.variables();
  b.collect_variables(vars);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.4, 1.6);
  int checked = 0, attempts = 0;
  while (checked < points && attempts < points * 20) {
    ++attempts;
    std::map<std::string, double> pt;
    for (const auto& v : vars) pt[v] = dist(rng);
    try {
      double va = a.eval(pt), vb = b.eval(pt);
      double scale = std::max({1.0, std::abs(va), std::abs(vb)});
      if (std::abs(va - vb) > rel_tol * scale) return false;
      ++checked;
    } catch (const EvalError&) {
      continue;  // singular point, resample
    }
  }
  return checked == points;
}

}  // namespace worms

#include "worms/worm.hpp"

#include <algorithm>
#include <stdexcept>

namespace worms {

int compare(const Generator& a, const Generator& b) {
  if (a.order() != b.order()) return a.order() < b.order() ? -1 : 1;
  if (a.subset != b.subset) return a.subset < b.subset ? -1 : 1;
  if (a.coord != b.coord) return a.coord < b.coord ? -1 : 1;
  return 0;
}

std::string subset_str(uint8_t mask) {
  std::string s = "{";
  bool first = true;
  for (int a = 1; a <= 8; ++a) {
    if (mask & (1u << (a - 1))) {
      if (!first) s += ",";
      s += std::to_string(a);
      first = false;
    }
  }
  return s + "}";
}

std::string generator_name(const Generator& g, const Chart& chart) {
  return "d" + subset_str(g.subset) + chart.coords.at(g.coord);
}

int WormMonomial::parity() const {
  int p = 0;
  for (const auto& f : factors) p += f.gen.parity() * f.exp;
  return p & 1;
}

std::vector<int> WormMonomial::multidegree(int level) const {
  std::vector<int> deg(level, 0);
  for (const auto& f : factors)
    for (int a = 1; a <= level; ++a)
      if (f.gen.contains(a)) deg[a - 1] += f.exp;
  return deg;
}

int compare(const WormMonomial& a, const WormMonomial& b) {
  size_t n = std::min(a.factors.size(), b.factors.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(a.factors[i].gen, b.factors[i].gen);
    if (c != 0) return c;
    if (a.factors[i].exp != b.factors[i].exp)
      return a.factors[i].exp < b.factors[i].exp ? -1 : 1;
  }
  if (a.factors.size() != b.factors.size())
    return a.factors.size() < b.factors.size() ? -1 : 1;
  return 0;
}

std::pair<int, WormMonomial> canonicalize_product(std::vector<GenPower> raw) {
  for (const auto& f : raw) {
    if (f.exp < 1) throw std::invalid_argument("generator exponent must be >= 1");
    if (f.gen.parity() == 1 && f.exp > 1) return {0, WormMonomial{}};
  }
  // insertion sort, counting transpositions of odd factors
  int sign = 1;
  for (size_t i = 1; i < raw.size(); ++i) {
    GenPower cur = raw[i];
    size_t j = i;
    while (j > 0 && compare(raw[j - 1].gen, cur.gen) > 0) {
      if ((raw[j - 1].gen.parity() & cur.gen.parity()) == 1) sign = -sign;
      raw[j] = raw[j - 1];
      --j;
    }
    raw[j] = cur;
  }
  WormMonomial m;
  for (auto& f : raw) {
    if (!m.factors.empty() && m.factors.back().gen == f.gen) {
      if (f.gen.parity() == 1) return {0, WormMonomial{}};
      m.factors.back().exp += f.exp;
    } else {
      m.factors.push_back(f);
    }
  }
  return {sign, std::move(m)};
}

Worm Worm::scalar(ChartPtr chart, ScalarExpr coeff) {
  Worm w(std::move(chart));
  if (!coeff.is_zero()) w.terms_.push_back({WormMonomial{}, std::move(coeff)});
  return w;
}

Worm Worm::generator(ChartPtr chart, Generator g) {
  if (g.subset == 0) throw std::invalid_argument("generator subset is empty");
  if (g.coord < 0 || g.coord >= chart->dim())
    throw std::invalid_argument("generator coordinate out of range");
  for (int a = chart->level + 1; a <= 8; ++a)
    if (g.contains(a))
      throw std::invalid_argument("generator subset exceeds chart level");
  Worm w(std::move(chart));
  WormMonomial m;
  m.factors.push_back({g, 1});
  w.terms_.push_back({std::move(m), ScalarExpr::constant(1)});
  return w;
}

Worm Worm::from_terms(ChartPtr chart, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return compare(a.first, b.first) < 0;
  });
  Worm w(std::move(chart));
  for (auto& t : terms) {
    if (t.second.is_zero()) continue;
    if (!w.terms_.empty() && w.terms_.back().first == t.first) {
      w.terms_.back().second = w.terms_.back().second + t.second;
      if (w.terms_.back().second.is_zero()) w.terms_.pop_back();
    } else {
      w.terms_.push_back(std::move(t));
    }
  }
  return w;
}

ScalarExpr Worm::coefficient(const WormMonomial& m) const {
  for (const auto& t : terms_)
    if (t.first == m) return t.second;
  return ScalarExpr();
}

std::optional<int> Worm::parity() const {
  std::optional<int> p;
  for (const auto& t : terms_) {
    int q = t.first.parity();
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p ? p : std::optional<int>(0);  // zero worm counts as even
}

std::optional<std::vector<int>> Worm::multidegree() const {
  std::optional<std::vector<int>> d;
  for (const auto& t : terms_) {
    auto q = t.first.multidegree(chart_->level);
    if (d && *d != q) return std::nullopt;
    d = std::move(q);
  }
  if (!d) return std::vector<int>(chart_ ? chart_->level : 0, 0);
  return d;
}

Worm Worm::operator-() const {
  Worm w = *this;
  for (auto& t : w.terms_) t.second = -t.second;
  return w;
}

namespace {

void check_charts(const Worm& a, const Worm& b) {
  if (!same_chart(a.chart(), b.chart()))
    throw std::invalid_argument("worms live on different charts");
}

}  // namespace

Worm operator+(const Worm& a, const Worm& b) {
  if (a.is_zero() && !a.chart()) return b;
  if (b.is_zero() && !b.chart()) return a;
  check_charts(a, b);
  std::vector<Worm::Term> v = a.terms_;
  v.insert(v.end(), b.terms_.begin(), b.terms_.end());
  return Worm::from_terms(a.chart_, std::move(v));
}

Worm operator-(const Worm& a, const Worm& b) { return a + (-b); }

Worm operator*(const Worm& a, const Worm& b) {
  check_charts(a, b);
  std::vector<Worm::Term> v;
  v.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      std::vector<GenPower> raw = ta.first.factors;
      raw.insert(raw.end(), tb.first.factors.begin(), tb.first.factors.end());
      auto [sign, mono] = canonicalize_product(std::move(raw));
      if (sign == 0) continue;
      ScalarExpr c = ta.second * tb.second;
      if (sign < 0) c = -c;
      v.push_back({std::move(mono), std::move(c)});
    }
  }
  return Worm::from_terms(a.chart_, std::move(v));
}

Worm operator*(const ScalarExpr& s, const Worm& w) {
  Worm out(w.chart_);
  for (const auto& t : w.terms_) {
    ScalarExpr c = s * t.second;
    if (!c.is_zero()) out.terms_.push_back({t.first, std::move(c)});
  }
  return out;
}

bool operator==(const Worm& a, const Worm& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].first == b.terms_[i].first)) return false;
    if (a.terms_[i].second != b.terms_[i].second) return false;
  }
  return true;
}

std::string Worm::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < terms_.size(); ++i) {
    const auto& [mono, coeff] = terms_[i];
    ScalarExpr c = coeff;
    std::string cs = c.str();
    bool neg = false;
    if (c.terms().size() == 1 && cs.size() && cs[0] == '-') {
      neg = true;
      c = -c;
      cs = c.str();
    }
    s += i == 0 ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string gens;
    for (const auto& f : mono.factors) {
      if (!gens.empty()) gens += "*";
      gens += generator_name(f.gen, *chart_);
      if (f.exp != 1) gens += "^" + std::to_string(f.exp);
    }
    if (gens.empty()) {
      s += c.terms().size() > 1 ? "(" + cs + ")" : cs;
    } else if (auto q = c.as_constant(); q && *q == 1) {
      s += gens;
    } else {
      s += (c.terms().size() > 1 ? "(" + cs + ")" : cs) + "*" + gens;
    }
  }
  return s;
}

}  // namespace worms

#include "worms/pseudo.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace worms {

int compare(const OddMono& a, const OddMono& b) {
  if (a.gens.size() != b.gens.size())
    return a.gens.size() < b.gens.size() ? -1 : 1;
  for (size_t i = 0; i < a.gens.size(); ++i) {
    int c = compare(a.gens[i], b.gens[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string even_gen_var(const Generator& g, const Chart& chart) {
  return generator_name(g, chart);
}

std::vector<Generator> odd_generators(const Chart& chart) {
  std::vector<uint8_t> masks;
  for (uint8_t m = 1; m < (1u << chart.level); ++m)
    if (__builtin_popcount(m) & 1) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](uint8_t a, uint8_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<Generator> out;
  for (uint8_t m : masks)
    for (int i = 0; i < chart.dim(); ++i) out.push_back(Generator{m, i});
  return out;
}

namespace {

// canonicalize a word of distinct odd generators; sign 0 on repeats
std::pair<int, OddMono> canonical_odd(const std::vector<Generator>& word) {
  std::vector<GenPower> raw;
  raw.reserve(word.size());
  for (const Generator& g : word) raw.push_back(GenPower{g, 1});
  auto [sign, mono] = canonicalize_product(std::move(raw));
  OddMono out;
  for (const GenPower& gp : mono.factors) out.gens.push_back(gp.gen);
  return {sign, std::move(out)};
}

}  // namespace

PseudoWorm PseudoWorm::from_worm(const Worm& w) {
  if (!w.chart()) throw std::invalid_argument("worm has no chart");
  PseudoWorm out(w.chart());
  for (const auto& [mono, coeff] : w.terms()) {
    OddMono odd;
    ScalarExpr f = coeff;
    // even generators commute, so factoring them into the coefficient
    // introduces no sign and keeps the odd word canonical
    for (const GenPower& gp : mono.factors) {
      if (gp.gen.parity() == 1) {
        odd.gens.push_back(gp.gen);
      } else {
        f = f * ScalarExpr::variable(even_gen_var(gp.gen, *w.chart()))
                    .pow(gp.exp);
      }
    }
    out.add_term(std::move(odd), std::move(f));
  }
  return out;
}

PseudoWorm PseudoWorm::scalar(ChartPtr chart, ScalarExpr f) {
  PseudoWorm out(std::move(chart));
  out.add_term(OddMono{}, std::move(f));
  return out;
}

void PseudoWorm::add_term(OddMono m, ScalarExpr f) {
  if (f.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), std::move(f));
  } else {
    it->second = it->second + f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PseudoWorm PseudoWorm::operator+(const PseudoWorm& o) const {
  if (!same_chart(chart_, o.chart_))
    throw std::invalid_argument("chart mismatch");
  PseudoWorm out = *this;
  for (const auto& [m, f] : o.terms_) out.add_term(m, f);
  return out;
}

PseudoWorm PseudoWorm::operator-(const PseudoWorm& o) const {
  if (!same_chart(chart_, o.chart_))
    throw std::invalid_argument("chart mismatch");
  PseudoWorm out = *this;
  for (const auto& [m, f] : o.terms_) out.add_term(m, -f);
  return out;
}

PseudoWorm PseudoWorm::operator*(const PseudoWorm& o) const {
  if (!same_chart(chart_, o.chart_))
    throw std::invalid_argument("chart mismatch");
  PseudoWorm out(chart_);
  for (const auto& [ma, fa] : terms_)
    for (const auto& [mb, fb] : o.terms_) {
      std::vector<Generator> word = ma.gens;
      word.insert(word.end(), mb.gens.begin(), mb.gens.end());
      auto [sign, mono] = canonical_odd(word);
      if (sign == 0) continue;
      out.add_term(std::move(mono),
                   ScalarExpr::constant(Rational(sign)) * fa * fb);
    }
  return out;
}

std::string PseudoWorm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, f] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << f.str() << ")";
    for (const Generator& g : m.gens)
      os << "*" << generator_name(g, *chart_);
  }
  return os.str();
}

PseudoWorm pseudo_exp(const PseudoWorm& p) {
  const ChartPtr& c = p.chart();
  ScalarExpr s;
  PseudoWorm nil(c);
  for (const auto& [m, f] : p.terms()) {
    if (m.gens.empty()) {
      s = f;
    } else if (m.gens.size() % 2 != 0) {
      throw std::invalid_argument("exp of an odd element");
    } else {
      nil.add_term(m, f);
    }
  }
  PseudoWorm sum = PseudoWorm::scalar(c, ScalarExpr::constant(1));
  PseudoWorm power = sum;
  Rational fact(1);
  // nilpotent: each factor adds at least two odd generators
  int bound = static_cast<int>(odd_generators(*c).size()) / 2 + 1;
  for (int j = 1; j <= bound; ++j) {
    power = power * nil;
    if (power.is_zero()) break;
    fact = fact * Rational(j);
    for (const auto& [m, f] : power.terms())
      sum.add_term(m, ScalarExpr::constant(Rational(1) / fact) * f);
  }
  if (!s.is_zero()) sum = PseudoWorm::scalar(c, exp(s)) * sum;
  return sum;
}

PseudoWorm d(int a, const PseudoWorm& p) {
  const ChartPtr& c = p.chart();
  if (a < 1 || a > c->level) throw std::invalid_argument("bad index");
  PseudoWorm out(c);
  uint8_t abit = static_cast<uint8_t>(1u << (a - 1));
  for (const auto& [mono, f] : p.terms()) {
    // chain rule through the coordinates
    for (int i = 0; i < c->dim(); ++i) {
      ScalarExpr fx = f.derivative(c->coords[i]);
      if (fx.is_zero()) continue;
      std::vector<Generator> word{Generator{abit, i}};
      word.insert(word.end(), mono.gens.begin(), mono.gens.end());
      auto [sign, m2] = canonical_odd(word);
      if (sign == 0) continue;
      out.add_term(std::move(m2), ScalarExpr::constant(Rational(sign)) * fx);
    }
    // chain rule through even generator variables
    for (uint8_t mask = 1; mask < (1u << c->level); ++mask) {
      if (__builtin_popcount(mask) % 2 != 0) continue;
      if (mask & abit) continue;
      int below = __builtin_popcount(mask & (abit - 1));
      int s0 = (below & 1) ? -1 : 1;
      for (int i = 0; i < c->dim(); ++i) {
        ScalarExpr fv = f.derivative(even_gen_var(Generator{mask, i}, *c));
        if (fv.is_zero()) continue;
        std::vector<Generator> word{
            Generator{static_cast<uint8_t>(mask | abit), i}};
        word.insert(word.end(), mono.gens.begin(), mono.gens.end());
        auto [sign, m2] = canonical_odd(word);
        if (sign == 0) continue;
        out.add_term(std::move(m2),
                     ScalarExpr::constant(Rational(s0 * sign)) * fv);
      }
    }
    // graded Leibniz over the odd word
    for (size_t j = 0; j < mono.gens.size(); ++j) {
      Generator g = mono.gens[j];
      if (g.subset & abit) continue;
      int below = __builtin_popcount(g.subset & (abit - 1));
      int s0 = (below & 1) ? -1 : 1;
      if (j & 1) s0 = -s0;  // d_a passes j odd generators
      Generator img{static_cast<uint8_t>(g.subset | abit), g.coord};
      OddMono rest;
      for (size_t l = 0; l < mono.gens.size(); ++l)
        if (l != j) rest.gens.push_back(mono.gens[l]);
      // the image generator is even and joins the coefficient
      out.add_term(std::move(rest),
                   ScalarExpr::constant(Rational(s0)) * f *
                       ScalarExpr::variable(even_gen_var(img, *c)));
    }
  }
  return out;
}

ScalarExpr berezin(const PseudoWorm& p) {
  const ChartPtr& c = p.chart();
  std::vector<Generator> all = odd_generators(*c);
  // orientation word: per coordinate, all odd differentials in subset order
  std::vector<Generator> word;
  for (int i = 0; i < c->dim(); ++i)
    for (const Generator& g : all)
      if (g.coord == i) word.push_back(Generator{g.subset, i});
  auto [tau, top] = canonical_odd(word);
  auto it = p.terms().find(top);
  if (it == p.terms().end()) return ScalarExpr();
  return ScalarExpr::constant(Rational(tau)) * it->second;
}

}  // namespace worms

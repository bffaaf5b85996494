#include "worms/pullback.hpp"

#include <bit>
#include <stdexcept>

namespace worms {

namespace {

void check_map(const SmoothMap& phi) {
  if (!phi.source || !phi.target)
    throw std::invalid_argument("map missing a chart");
  if (phi.source->level != phi.target->level)
    throw std::invalid_argument("level mismatch between charts");
  if (static_cast<int>(phi.components.size()) != phi.target->dim())
    throw std::invalid_argument("map component count mismatch");
}

// phi^*(d_S x^i) = d_{s_1}(...d_{s_m}(phi^i)...) for S = {s_1 < ... < s_m};
// consistent with d_a(d_S x) carrying no sign when a < min(S).
Worm generator_image(const SmoothMap& phi, uint8_t subset, int coord) {
  Worm w = Worm::scalar(phi.source, phi.components[coord]);
  for (int a = phi.source->level; a >= 1; --a)
    if (subset & (1u << (a - 1))) w = d(a, w);
  return w;
}

}  // namespace

Worm pullback(const SmoothMap& phi, const Worm& w) {
  check_map(phi);
  if (!same_chart(phi.target, w.chart()))
    throw std::invalid_argument("worm lives on a different chart");
  std::map<std::string, ScalarExpr> subst;
  for (int i = 0; i < phi.target->dim(); ++i)
    subst[phi.target->coords[i]] = phi.components[i];
  std::map<std::pair<uint8_t, int>, Worm> cache;
  Worm out(phi.source);
  for (auto& [mono, coeff] : w.terms()) {
    Worm piece = Worm::scalar(phi.source, coeff.substitute(subst));
    for (auto& [g, e] : mono.factors) {
      auto key = std::make_pair(g.subset, g.coord);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, generator_image(phi, g.subset, g.coord)).first;
      for (int r = 0; r < e; ++r) piece = piece * it->second;
    }
    out = out + piece;
  }
  return out;
}

GrassmannPoly taylor_compose(const ScalarExpr& f,
                             const std::vector<std::string>& vars,
                             const std::vector<GrassmannPoly>& X) {
  if (vars.size() != X.size())
    throw std::invalid_argument("variable/argument count mismatch");
  if (X.empty()) throw std::invalid_argument("empty composition");
  const ChartPtr& chart = X[0].chart();
  int n = static_cast<int>(vars.size());
  int level = chart->level;

  std::map<std::string, ScalarExpr> base;
  std::vector<GrassmannPoly> nil;  // X_i minus its scalar part
  for (int i = 0; i < n; ++i) {
    Worm s = X[i].component(0);
    if (!s.is_zero() && !s.terms().front().first.empty())
      throw std::invalid_argument("zero-component must be scalar");
    base[vars[i]] = s.scalar_part();
    GrassmannPoly m(chart);
    for (auto& [mask, w] : X[i].components())
      if (mask != 0) m.add_component(mask, w);
    nil.push_back(std::move(m));
  }

  GrassmannPoly unit(chart);
  unit.add_component(0, Worm::scalar(chart, ScalarExpr::constant(1)));

  GrassmannPoly out(chart);
  // multi-indices alpha with |alpha| <= level; higher products of the
  // nilpotent parts carry more than `level` thetas and vanish
  std::vector<int> alpha(n, 0);
  std::function<void(int, int, const ScalarExpr&, const GrassmannPoly&,
                     const Rational&)>
      rec = [&](int i, int remaining, const ScalarExpr& df,
                const GrassmannPoly& nprod, const Rational& fact) {
        if (i == n) {
          ScalarExpr c = df.substitute(base);
          if (c.is_zero()) return;
          GrassmannPoly scaled(chart);
          scaled.add_component(
              0, Worm::scalar(chart, ScalarExpr::constant(Rational(1) / fact) * c));
          out = out + scaled * nprod;
          return;
        }
        ScalarExpr dcur = df;
        GrassmannPoly ncur = nprod;
        Rational fcur = fact;
        for (int e = 0; e <= remaining; ++e) {
          if (e > 0) {
            dcur = dcur.derivative(vars[i]);
            if (dcur.is_zero()) break;
            ncur = ncur * nil[i];
            if (ncur.components().empty()) break;
            fcur *= e;
          }
          rec(i + 1, remaining - e, dcur, ncur, fcur);
        }
      };
  rec(0, level, f, unit, Rational(1));
  return out;
}

SmoothMap compose(const SmoothMap& f, const SmoothMap& g) {
  check_map(f);
  check_map(g);
  if (!same_chart(f.source, g.target))
    throw std::invalid_argument("maps are not composable");
  std::map<std::string, ScalarExpr> subst;
  for (int i = 0; i < f.source->dim(); ++i)
    subst[f.source->coords[i]] = g.components[i];
  SmoothMap out;
  out.source = g.source;
  out.target = f.target;
  for (auto& c : f.components) out.components.push_back(c.substitute(subst));
  return out;
}

}  // namespace worms

#include "worms/dgca.hpp"

#include <stdexcept>

namespace worms {

void validate_algebra(const LieAlgebraSpec& g) {
  int r = g.dimension;
  if (r < 1) throw std::invalid_argument("algebra dimension must be >= 1");
  if (static_cast<int>(g.c.size()) != r)
    throw std::invalid_argument("structure constant shape mismatch");
  for (const auto& plane : g.c) {
    if (static_cast<int>(plane.size()) != r)
      throw std::invalid_argument("structure constant shape mismatch");
    for (const auto& row : plane)
      if (static_cast<int>(row.size()) != r)
        throw std::invalid_argument("structure constant shape mismatch");
  }
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (g.c[k][i][j] != -g.c[k][j][i])
          throw std::invalid_argument("structure constants not antisymmetric");
}

ChartPtr ce_chart(const LieAlgebraSpec& g) {
  validate_algebra(g);
  std::vector<std::string> coords;
  for (int a = 1; a <= g.dimension; ++a)
    coords.push_back("e" + std::to_string(a));
  return make_chart("g", coords, 1);
}

Worm ce_generator(const ChartPtr& chart, int a) {
  return Worm::generator(chart, Generator{0b1, a});
}

namespace {

GenImages ce_images(const LieAlgebraSpec& g, const ChartPtr& chart) {
  int r = g.dimension;
  GenImages imgs;
  imgs.chart = chart;
  imgs.parity = 1;
  imgs.coord_image.resize(r, Worm(chart));
  imgs.gen_image.resize(r);
  for (int a = 0; a < r; ++a) {
    Worm img(chart);
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) {
        if (g.c[a][b][c] == 0) continue;
        img = img - ScalarExpr::constant(g.c[a][b][c] / 2) *
                        (ce_generator(chart, b) * ce_generator(chart, c));
      }
    imgs.gen_image[a][0b1] = img;
  }
  return imgs;
}

}  // namespace

Worm ce_differential(const LieAlgebraSpec& g, const Worm& w) {
  validate_algebra(g);
  if (!w.chart()) throw std::invalid_argument("element has no chart");
  if (w.chart()->level != 1 || w.chart()->dim() != g.dimension)
    throw std::invalid_argument("element does not live on the dual chart");
  return apply_derivation(ce_images(g, w.chart()), w);
}

bool ce_square_zero(const LieAlgebraSpec& g) {
  ChartPtr chart = ce_chart(g);
  for (int a = 0; a < g.dimension; ++a) {
    Worm e = ce_generator(chart, a);
    if (!ce_differential(g, ce_differential(g, e)).is_zero()) return false;
  }
  return true;
}

namespace {

Worm connection_worm(const ConnectionForm& A, int a) {
  Worm out(A.chart);
  for (int i = 0; i < A.chart->dim(); ++i)
    out = out + A.a[a][i] * Worm::generator(A.chart, Generator{0b1, i});
  return out;
}

void validate_connection(const LieAlgebraSpec& g, const ConnectionForm& A) {
  validate_algebra(g);
  if (!A.chart || A.chart->level != 1)
    throw std::invalid_argument("connection needs a level-1 chart");
  if (static_cast<int>(A.a.size()) != g.dimension)
    throw std::invalid_argument("connection component shape mismatch");
  for (const auto& row : A.a)
    if (static_cast<int>(row.size()) != A.chart->dim())
      throw std::invalid_argument("connection component shape mismatch");
}

// multiplicative extension of e^a -> A^a to an element of the dual algebra
Worm apply_morphism(const Worm& w, const ConnectionForm& A) {
  Worm out(A.chart);
  for (const auto& [mono, coeff] : w.terms()) {
    std::optional<Rational> c = coeff.as_constant();
    if (!c) throw std::invalid_argument("non-constant dual-algebra element");
    Worm prod = Worm::scalar(A.chart, ScalarExpr::constant(*c));
    for (const GenPower& gp : mono.factors)
      for (int e = 0; e < gp.exp; ++e)
        prod = prod * connection_worm(A, gp.gen.coord);
    out = out + prod;
  }
  return out;
}

}  // namespace

std::vector<Worm> mc_residual(const LieAlgebraSpec& g,
                              const ConnectionForm& A) {
  validate_connection(g, A);
  std::vector<Worm> out;
  for (int a = 0; a < g.dimension; ++a) {
    Worm f = d(1, connection_worm(A, a));
    for (int b = 0; b < g.dimension; ++b)
      for (int c = 0; c < g.dimension; ++c) {
        if (g.c[a][b][c] == 0) continue;
        f = f + ScalarExpr::constant(g.c[a][b][c] / 2) *
                    (connection_worm(A, b) * connection_worm(A, c));
      }
    out.push_back(f);
  }
  return out;
}

bool dgca_morphism_check(const LieAlgebraSpec& g, const ConnectionForm& A) {
  validate_connection(g, A);
  ChartPtr dual = ce_chart(g);
  ConnectionForm phi = A;
  std::vector<Worm> span;
  for (int a = 0; a < g.dimension; ++a) span.push_back(ce_generator(dual, a));
  for (int a = 0; a < g.dimension; ++a)
    for (int b = a + 1; b < g.dimension; ++b)
      span.push_back(ce_generator(dual, a) * ce_generator(dual, b));
  for (const Worm& e : span) {
    Worm lhs = d(1, apply_morphism(e, phi));
    Worm rhs = apply_morphism(ce_differential(g, e), phi);
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace worms

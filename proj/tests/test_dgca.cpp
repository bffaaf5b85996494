#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "worms/dgca.hpp"

using namespace worms;

namespace {

ScalarExpr V(const char* n) { return ScalarExpr::variable(n); }

LieAlgebraSpec abelian(int r) {
  LieAlgebraSpec g;
  g.dimension = r;
  g.c.assign(r, std::vector<std::vector<Rational>>(
                    r, std::vector<Rational>(r, Rational(0))));
  return g;
}

LieAlgebraSpec su2() {
  LieAlgebraSpec g = abelian(3);
  int eps[3][3][3] = {};
  eps[0][1][2] = eps[1][2][0] = eps[2][0][1] = 1;
  eps[0][2][1] = eps[2][1][0] = eps[1][0][2] = -1;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g.c[k][i][j] = eps[k][i][j];
  return g;
}

LieAlgebraSpec heisenberg() {
  LieAlgebraSpec g = abelian(3);
  g.c[2][0][1] = 1;  // [e1, e2] = e3
  g.c[2][1][0] = -1;
  return g;
}

// [e1, e2] = e3 together with [e1, e3] = e1 violates Jacobi
LieAlgebraSpec non_jacobi() {
  LieAlgebraSpec g = heisenberg();
  g.c[0][0][2] = 1;
  g.c[0][2][0] = -1;
  return g;
}

bool all_zero(const std::vector<Worm>& v) {
  for (const Worm& w : v)
    if (!w.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("structure constant validation") {
  LieAlgebraSpec bad = abelian(2);
  bad.c[0][0][1] = 1;  // missing the antisymmetric partner
  CHECK_THROWS_AS(validate_algebra(bad), std::invalid_argument);
  bad = abelian(2);
  bad.c.pop_back();
  CHECK_THROWS_AS(validate_algebra(bad), std::invalid_argument);
  CHECK_NOTHROW(validate_algebra(su2()));
}

TEST_CASE("differential on the dual of an abelian algebra vanishes") {
  LieAlgebraSpec g = abelian(3);
  ChartPtr c = ce_chart(g);
  for (int a = 0; a < 3; ++a)
    CHECK(ce_differential(g, ce_generator(c, a)).is_zero());
  Worm prod = ce_generator(c, 0) * ce_generator(c, 2);
  CHECK(ce_differential(g, prod).is_zero());
}

TEST_CASE("rotation algebra differential") {
  LieAlgebraSpec g = su2();
  ChartPtr c = ce_chart(g);
  CHECK(ce_differential(g, ce_generator(c, 0)) ==
        -(ce_generator(c, 1) * ce_generator(c, 2)));
  CHECK(ce_differential(g, ce_generator(c, 1)) ==
        -(ce_generator(c, 2) * ce_generator(c, 0)));
  CHECK(ce_differential(g, ce_generator(c, 2)) ==
        -(ce_generator(c, 0) * ce_generator(c, 1)));
}

TEST_CASE("squared differential detects the Jacobi identity") {
  CHECK(ce_square_zero(abelian(2)));
  CHECK(ce_square_zero(su2()));
  CHECK(ce_square_zero(heisenberg()));
  CHECK_FALSE(ce_square_zero(non_jacobi()));
}

TEST_CASE("flatness residual for line-valued forms") {
  LieAlgebraSpec g = abelian(1);
  auto chart = make_chart("U", {"x", "y"}, 1);

  ConnectionForm exact{chart, {{V("y"), V("x")}}};  // y dx + x dy
  CHECK(all_zero(mc_residual(g, exact)));
  CHECK(dgca_morphism_check(g, exact));

  ConnectionForm curved{chart, {{V("y"), ScalarExpr()}}};  // y dx
  std::vector<Worm> f = mc_residual(g, curved);
  REQUIRE(f.size() == 1);
  Worm expect = -(Worm::generator(chart, Generator{0b1, 0}) *
                  Worm::generator(chart, Generator{0b1, 1}));
  CHECK(f[0] == expect);
  CHECK_FALSE(dgca_morphism_check(g, curved));
}

TEST_CASE("flat nonabelian connections") {
  auto chart = make_chart("U", {"x", "y"}, 1);
  LieAlgebraSpec g = su2();
  ConnectionForm zero{chart,
                      {{ScalarExpr(), ScalarExpr()},
                       {ScalarExpr(), ScalarExpr()},
                       {ScalarExpr(), ScalarExpr()}}};
  CHECK(all_zero(mc_residual(g, zero)));
  CHECK(dgca_morphism_check(g, zero));

  // Heisenberg: A = e1 dx + e2 dy - e3 x dy has dA^3 = -dx dy = -A^1 A^2
  LieAlgebraSpec h = heisenberg();
  ConnectionForm flat{chart,
                      {{ScalarExpr::constant(1), ScalarExpr()},
                       {ScalarExpr(), ScalarExpr::constant(1)},
                       {ScalarExpr(), -V("x")}}};
  CHECK(all_zero(mc_residual(h, flat)));
  CHECK(dgca_morphism_check(h, flat));

  // perturbing one component breaks flatness and the morphism together
  ConnectionForm bent = flat;
  bent.a[2][0] = V("y");
  CHECK_FALSE(all_zero(mc_residual(h, bent)));
  CHECK_FALSE(dgca_morphism_check(h, bent));
}

TEST_CASE("residual and morphism checks agree on a sample family") {
  auto chart = make_chart("U", {"x", "y"}, 1);
  LieAlgebraSpec g = su2();
  std::vector<ConnectionForm> family;
  family.push_back(ConnectionForm{
      chart,
      {{V("y"), ScalarExpr()}, {ScalarExpr(), V("x")}, {ScalarExpr(), ScalarExpr()}}});
  family.push_back(ConnectionForm{
      chart,
      {{ScalarExpr::constant(1), ScalarExpr()},
       {ScalarExpr(), ScalarExpr::constant(1)},
       {ScalarExpr(), ScalarExpr()}}});
  family.push_back(ConnectionForm{
      chart,
      {{ScalarExpr(), ScalarExpr()},
       {ScalarExpr(), ScalarExpr()},
       {V("x") * V("y"), ScalarExpr()}}});
  for (size_t i = 0; i < family.size(); ++i) {
    CAPTURE(i);
    CHECK(all_zero(mc_residual(g, family[i])) ==
          dgca_morphism_check(g, family[i]));
  }
}

TEST_CASE("shape errors") {
  auto chart = make_chart("U", {"x"}, 1);
  LieAlgebraSpec g = su2();
  ConnectionForm wrong{chart, {{ScalarExpr()}, {ScalarExpr()}}};
  CHECK_THROWS_AS(mc_residual(g, wrong), std::invalid_argument);
  auto lvl2 = make_chart("V", {"x"}, 2);
  ConnectionForm bad_level{lvl2, {{ScalarExpr()}, {ScalarExpr()}, {ScalarExpr()}}};
  CHECK_THROWS_AS(mc_residual(g, bad_level), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "worms/pullback.hpp"

using namespace worms;

namespace {

Worm gen_worm(const ChartPtr& c, uint8_t mask, int coord) {
  return Worm::generator(c, Generator{mask, coord});
}

ScalarExpr random_poly(const ChartPtr& c, std::mt19937& rng, int max_deg = 3) {
  std::uniform_int_distribution<int> cf(-3, 3), deg(0, max_deg);
  ScalarExpr p;
  for (int t = 0; t < 3; ++t) {
    ScalarExpr mono = ScalarExpr::constant(cf(rng));
    for (int i = 0; i < c->dim(); ++i) mono = mono * c->coord_expr(i).pow(deg(rng));
    p = p + mono;
  }
  return p;
}

SmoothMap random_map(const ChartPtr& src, const ChartPtr& dst,
                     std::mt19937& rng) {
  SmoothMap phi;
  phi.source = src;
  phi.target = dst;
  for (int j = 0; j < dst->dim(); ++j)
    phi.components.push_back(random_poly(src, rng, 3));
  return phi;
}

Worm random_worm(const ChartPtr& c, std::mt19937& rng) {
  std::uniform_int_distribution<int> nf(0, 2), coord(0, c->dim() - 1);
  std::uniform_int_distribution<int> mask(1, (1 << c->level) - 1);
  Worm w = Worm::scalar(c, random_poly(c, rng, 2));
  int n = nf(rng);
  for (int i = 0; i < n; ++i)
    w = w * gen_worm(c, static_cast<uint8_t>(mask(rng)), coord(rng));
  return w;
}

}  // namespace

TEST_CASE("nilpotent composition, first order") {
  auto c = make_chart("U", {"y"}, 1);
  ScalarExpr y = ScalarExpr::variable("y");
  auto X = grassmann_expand(c);
  GrassmannPoly r = taylor_compose(y.pow(2), {"y"}, X);
  CHECK(r.component(0) == Worm::scalar(c, y.pow(2)));
  CHECK(r.component(0b1) == (ScalarExpr::constant(2) * y) * gen_worm(c, 0b1, 0));

  // identity function passes the argument through
  GrassmannPoly id = taylor_compose(y, {"y"}, X);
  CHECK(id.component(0) == X[0].component(0));
  CHECK(id.component(0b1) == X[0].component(0b1));
}

TEST_CASE("nilpotent composition, second order") {
  auto c = make_chart("U", {"y"}, 2);
  ScalarExpr y = ScalarExpr::variable("y");
  auto X = grassmann_expand(c);
  GrassmannPoly r = taylor_compose(y.pow(2), {"y"}, X);
  Worm expect = (ScalarExpr::constant(2) * y) * gen_worm(c, 0b11, 0) +
                ScalarExpr::constant(2) * (gen_worm(c, 0b01, 0) * gen_worm(c, 0b10, 0));
  CHECK(r.component(0b11) == expect);
}

TEST_CASE("pullback of generators along a squaring map") {
  auto src = make_chart("U", {"x"}, 2);
  auto dst = make_chart("V", {"y"}, 2);
  ScalarExpr x = ScalarExpr::variable("x");
  SmoothMap phi{src, dst, {x.pow(2)}};

  CHECK(pullback(phi, gen_worm(dst, 0b01, 0)) ==
        (ScalarExpr::constant(2) * x) * gen_worm(src, 0b01, 0));
  CHECK(pullback(phi, gen_worm(dst, 0b11, 0)) ==
        (ScalarExpr::constant(2) * x) * gen_worm(src, 0b11, 0) +
            ScalarExpr::constant(2) *
                (gen_worm(src, 0b01, 0) * gen_worm(src, 0b10, 0)));
}

TEST_CASE("identity map pulls back to the identity") {
  std::mt19937 rng(47);
  auto c = make_chart("U", {"x", "y"}, 2);
  SmoothMap id{c, c, {c->coord_expr(0), c->coord_expr(1)}};
  for (int t = 0; t < 20; ++t) {
    Worm w = random_worm(c, rng);
    CHECK(pullback(id, w) == w);
  }
}

TEST_CASE("generator images agree with the nilpotent composition") {
  // pullback of d_S y^j equals the theta^{S,rev} coefficient of
  // taylor_compose(phi^j, source expansion)
  std::mt19937 rng(53);
  auto src = make_chart("U", {"x", "y"}, 2);
  auto dst = make_chart("V", {"u", "v"}, 2);
  for (int t = 0; t < 10; ++t) {
    SmoothMap phi = random_map(src, dst, rng);
    auto X = grassmann_expand(src);
    for (int j = 0; j < 2; ++j) {
      GrassmannPoly comp = taylor_compose(phi.components[j], src->coords, X);
      for (uint8_t s : generator_subsets(2))
        CHECK(pullback(phi, gen_worm(dst, s, j)) == comp.component(s));
    }
  }
}

TEST_CASE("pullback commutes with every differential") {
  std::mt19937 rng(59);
  for (int k = 1; k <= 3; ++k) {
    auto src = make_chart("U", {"x", "y"}, k);
    auto dst = make_chart("V", {"u", "v", "w"}, k);
    for (int t = 0; t < 12; ++t) {
      SmoothMap phi = random_map(src, dst, rng);
      Worm w = random_worm(dst, rng);
      for (int a = 1; a <= k; ++a)
        CHECK(pullback(phi, d(a, w)) == d(a, pullback(phi, w)));
    }
  }
}

TEST_CASE("pullback is a contravariant functor") {
  std::mt19937 rng(61);
  auto A = make_chart("A", {"x", "y"}, 2);
  auto B = make_chart("B", {"u", "v"}, 2);
  auto C = make_chart("C", {"s", "t"}, 2);
  for (int t = 0; t < 15; ++t) {
    SmoothMap psi = random_map(A, B, rng);  // A -> B
    SmoothMap phi = random_map(B, C, rng);  // B -> C
    SmoothMap comp = compose(phi, psi);     // A -> C
    Worm w = random_worm(C, rng);
    CHECK(pullback(comp, w) == pullback(psi, pullback(phi, w)));
  }
}

TEST_CASE("pullback is an algebra homomorphism") {
  std::mt19937 rng(67);
  auto src = make_chart("U", {"x", "y"}, 2);
  auto dst = make_chart("V", {"u", "v"}, 2);
  for (int t = 0; t < 20; ++t) {
    SmoothMap phi = random_map(src, dst, rng);
    Worm u = random_worm(dst, rng), v = random_worm(dst, rng);
    CHECK(pullback(phi, u * v) == pullback(phi, u) * pullback(phi, v));
  }
}

TEST_CASE("linear coordinate changes invert exactly") {
  auto U = make_chart("U", {"x", "y"}, 2);
  auto V = make_chart("V", {"u", "v"}, 2);
  ScalarExpr x = ScalarExpr::variable("x"), y = ScalarExpr::variable("y");
  ScalarExpr u = ScalarExpr::variable("u"), v = ScalarExpr::variable("v");
  // A = [[2,1],[1,1]], inverse [[1,-1],[-1,2]]
  SmoothMap phi{U, V, {ScalarExpr::constant(2) * x + y, x + y}};
  SmoothMap inv{V, U, {u - v, ScalarExpr::constant(-1) * u + ScalarExpr::constant(2) * v}};
  std::mt19937 rng(71);
  for (int t = 0; t < 15; ++t) {
    Worm w = random_worm(U, rng);
    CHECK(pullback(phi, pullback(inv, w)) == w);
  }
}

TEST_CASE("errors") {
  auto U = make_chart("U", {"x"}, 2);
  auto V = make_chart("V", {"y"}, 2);
  auto W1 = make_chart("W", {"z"}, 1);
  ScalarExpr x = ScalarExpr::variable("x");
  SmoothMap bad_level{U, W1, {x}};
  CHECK_THROWS_AS(pullback(bad_level, Worm::scalar(W1, x)),
                  std::invalid_argument);
  SmoothMap phi{U, V, {x.pow(2)}};
  CHECK_THROWS_AS(pullback(phi, Worm::scalar(U, x)), std::invalid_argument);
  SmoothMap bad_count{U, V, {}};
  CHECK_THROWS_AS(pullback(bad_count, Worm::scalar(V, x)),
                  std::invalid_argument);
}

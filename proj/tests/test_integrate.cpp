#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "worms/berezin_integrate.hpp"

using namespace worms;

namespace {

ScalarExpr V(const char* n) { return ScalarExpr::variable(n); }

Worm gen_worm(const ChartPtr& c, uint8_t mask, int coord) {
  return Worm::generator(c, Generator{mask, coord});
}

bool pseudo_equal(const PseudoWorm& a, const PseudoWorm& b) {
  return (a - b).is_zero();
}

QuadratureConfig gh_config(int nodes = 40) {
  QuadratureConfig cfg;
  cfg.method = "gauss-hermite";
  cfg.nodes = nodes;
  cfg.tol = 1e-6;
  return cfg;
}

QuadratureConfig ts_config(int nodes = 60) {
  QuadratureConfig cfg;
  cfg.method = "tanh-sinh-truncated";
  cfg.nodes = nodes;
  cfg.radius = 1e8;
  cfg.tol = 1e-6;
  return cfg;
}

// round sphere of radius r in a single stereographic chart
MetricSpec stereographic_sphere(double radius) {
  auto c = make_chart("S", {"x", "y"}, 2);
  Rational r2(static_cast<long>(radius * radius));
  ScalarExpr rho2 = ScalarExpr::constant(r2) + V("x").pow(2) + V("y").pow(2);
  ScalarExpr w = ScalarExpr::constant(Rational(4) * r2 * r2) / (rho2 * rho2);
  return MetricSpec{c, {{w, ScalarExpr()}, {ScalarExpr(), w}}};
}

}  // namespace

TEST_CASE("pseudoworm embedding and products") {
  auto c = make_chart("U", {"x"}, 2);
  Worm w = V("x") * gen_worm(c, 0b01, 0) +
           gen_worm(c, 0b11, 0) * gen_worm(c, 0b11, 0) * gen_worm(c, 0b10, 0);
  PseudoWorm p = PseudoWorm::from_worm(w);
  REQUIRE(p.terms().size() == 2);
  // even generator became a squared coefficient variable
  OddMono m2{{Generator{0b10, 0}}};
  CHECK(p.terms().at(m2) == V("d{1,2}x").pow(2));

  PseudoWorm a = PseudoWorm::from_worm(gen_worm(c, 0b01, 0));
  PseudoWorm b = PseudoWorm::from_worm(gen_worm(c, 0b10, 0));
  CHECK(pseudo_equal(a * b, PseudoWorm::from_worm(
                                gen_worm(c, 0b01, 0) * gen_worm(c, 0b10, 0))));
  // odd generators anticommute and square to zero
  PseudoWorm ab = a * b, ba = b * a;
  CHECK(pseudo_equal(ab + ba, PseudoWorm(c)));
  CHECK((a * a).is_zero());
}

TEST_CASE("differential on pseudoworms matches the polynomial one") {
  auto c = make_chart("U", {"x", "y"}, 2);
  std::vector<Worm> samples = {
      Worm::scalar(c, V("x") * V("y")),
      V("y") * gen_worm(c, 0b01, 0),
      gen_worm(c, 0b01, 0) * gen_worm(c, 0b10, 1),
      V("x") * gen_worm(c, 0b11, 1),
      gen_worm(c, 0b11, 0) * gen_worm(c, 0b11, 0) * gen_worm(c, 0b01, 1),
      gen_worm(c, 0b01, 0) * gen_worm(c, 0b10, 0) * gen_worm(c, 0b11, 1),
  };
  for (const Worm& w : samples)
    for (int a = 1; a <= 2; ++a)
      CHECK(pseudo_equal(d(a, PseudoWorm::from_worm(w)),
                         PseudoWorm::from_worm(d(a, w))));
  // d_a d_a = 0 and d_1 d_2 = -d_2 d_1 survive exponential coefficients
  PseudoWorm p = PseudoWorm::scalar(c, exp(-(V("x").pow(2)) - V("d{1,2}x").pow(2)));
  CHECK(d(1, d(1, p)).is_zero());
  CHECK(pseudo_equal(d(1, d(2, p)) + d(2, d(1, p)), PseudoWorm(c)));
}

TEST_CASE("exponential of even elements") {
  auto c = make_chart("U", {"x"}, 2);
  Worm block = gen_worm(c, 0b01, 0) * gen_worm(c, 0b10, 0);
  PseudoWorm e = pseudo_exp(PseudoWorm::from_worm(block));
  // 1 + d1x d2x, the square vanishes
  PseudoWorm expect = PseudoWorm::scalar(c, ScalarExpr::constant(1)) +
                      PseudoWorm::from_worm(block);
  CHECK(pseudo_equal(e, expect));
  CHECK_THROWS_AS(pseudo_exp(PseudoWorm::from_worm(gen_worm(c, 0b01, 0))),
                  std::invalid_argument);
}

TEST_CASE("top coefficient extraction") {
  auto c = make_chart("U", {"x"}, 2);
  Worm top = gen_worm(c, 0b01, 0) * gen_worm(c, 0b10, 0);
  CHECK(berezin(PseudoWorm::from_worm(ScalarExpr::constant(3) * top)) ==
        ScalarExpr::constant(3));
  CHECK(berezin(PseudoWorm::from_worm(gen_worm(c, 0b01, 0))).is_zero());
  CHECK(berezin(PseudoWorm::scalar(c, V("x"))).is_zero());

  // Gaussian integrand: coefficient survives with its even-variable factor
  ScalarExpr gauss = exp(-(V("x").pow(2)) - V("d{1,2}x").pow(2));
  PseudoWorm p = PseudoWorm::scalar(c, gauss) * PseudoWorm::from_worm(top);
  CHECK(berezin(p) == gauss);

  // swapped order flips the sign
  PseudoWorm q = PseudoWorm::from_worm(gen_worm(c, 0b10, 0)) *
                 PseudoWorm::from_worm(gen_worm(c, 0b01, 0));
  CHECK(berezin(q) == ScalarExpr::constant(-1));
}

TEST_CASE("quadrature rules on known integrals") {
  Axis gh = gauss_hermite_axis(40);
  double s0 = 0, s2 = 0;
  for (size_t i = 0; i < gh.points.size(); ++i) {
    double x = gh.points[i], w = gh.weights[i] * std::exp(-x * x);
    s0 += w;
    s2 += w * x * x;
  }
  CHECK(s0 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(s2 == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));

  Axis ts = tanh_sinh_full_axis(120, 1e8);
  double g = 0, lorentz = 0;
  for (size_t i = 0; i < ts.points.size(); ++i) {
    double x = ts.points[i], w = ts.weights[i];
    g += w * std::exp(-x * x);
    lorentz += w / ((1 + x * x) * (1 + x * x));
  }
  CHECK(g == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
  CHECK(lorentz == doctest::Approx(M_PI / 2).epsilon(1e-10));

  Axis box = tanh_sinh_box_axis(60, 0.0, 1.0);
  double cube = 0;
  for (size_t i = 0; i < box.points.size(); ++i)
    cube += box.weights[i] * box.points[i] * box.points[i];
  CHECK(cube == doctest::Approx(1.0 / 3).epsilon(1e-10));
}

TEST_CASE("tensor quadrature is worker independent") {
  auto f = [](const std::vector<double>& p) {
    return std::exp(-p[0] * p[0] - p[1] * p[1]) * (1 + p[0] * p[0] * p[1]);
  };
  std::vector<Axis> axes(2, tanh_sinh_full_axis(90, 1e8));
  double v1 = integrate_nd(f, axes, 1);
  double v3 = integrate_nd(f, axes, 3);
  double v7 = integrate_nd(f, axes, 7);
  CHECK(v1 == v3);  // bitwise: fixed-order pairwise reduction
  CHECK(v1 == v7);
  CHECK(v1 == doctest::Approx(M_PI).epsilon(1e-8));
}

TEST_CASE("Gaussian normalization by pure quadrature") {
  auto c = make_chart("U", {"x"}, 2);
  ScalarExpr gauss = exp(-(V("x").pow(2)) - V("d{1,2}x").pow(2));
  PseudoWorm p = PseudoWorm::scalar(c, gauss) *
                 PseudoWorm::from_worm(gen_worm(c, 0b01, 0) *
                                       gen_worm(c, 0b10, 0));
  IntegrationResult gh = integrate(p, gh_config());
  CHECK(gh.value == doctest::Approx(M_PI).epsilon(1e-6));
  IntegrationResult ts = integrate(p, ts_config());
  CHECK(ts.value == doctest::Approx(M_PI).epsilon(1e-4));
  CHECK(gh.nodes > 0);

  CHECK(integrate(PseudoWorm(c), gh_config()).value == 0.0);
}

TEST_CASE("Gaussian normalization by the analytic path") {
  auto c = make_chart("U", {"x"}, 2);
  Worm u = gen_worm(c, 0b11, 0);
  Worm exponent = Worm::scalar(c, -(V("x").pow(2))) - u * u;
  Worm pre = gen_worm(c, 0b01, 0) * gen_worm(c, 0b10, 0);
  ChartDomain dom;
  IntegrationResult r = gaussian_integrate(exponent, pre, dom, gh_config());
  CHECK(r.value == doctest::Approx(M_PI).epsilon(1e-6));
}

TEST_CASE("integrals of exact worms vanish") {
  auto c11 = make_chart("A", {"x"}, 1);
  auto c12 = make_chart("B", {"x", "y"}, 1);
  auto c21 = make_chart("C", {"x"}, 2);
  auto c22 = make_chart("D", {"x", "y"}, 2);

  ScalarExpr gx = exp(-(V("x").pow(2)));
  ScalarExpr gxy = exp(-(V("x").pow(2)) - V("y").pow(2));
  ScalarExpr gxu = exp(-(V("x").pow(2)) - V("d{1,2}x").pow(2));
  ScalarExpr gxyu = exp(-(V("x").pow(2)) - V("y").pow(2) -
                        V("d{1,2}x").pow(2) - V("d{1,2}y").pow(2));
  ScalarExpr gxyu1 = exp(-(V("x").pow(2)) - V("y").pow(2) -
                         V("d{1,2}x").pow(2));

  auto S = [](const ChartPtr& c, ScalarExpr f) {
    return PseudoWorm::scalar(c, std::move(f));
  };
  auto G = [](const ChartPtr& c, uint8_t m, int i) {
    return PseudoWorm::from_worm(Worm::generator(c, Generator{m, i}));
  };

  struct Case {
    PseudoWorm alpha;
    int a;
    double bound;
  };
  std::vector<Case> suite = {
      {S(c11, gx), 1, 1e-8},
      {S(c12, gxy) * G(c12, 0b1, 1), 1, 1e-8},
      {S(c11, V("x") * gx), 1, 1e-8},
      {S(c21, gxu) * G(c21, 0b10, 0), 1, 1e-6},
      {S(c21, V("d{1,2}x") * gxu) * G(c21, 0b10, 0), 1, 1e-6},
      {S(c21, V("x") * gxu) * G(c21, 0b10, 0), 1, 1e-6},
      {S(c21, gxu), 2, 1e-6},
      {S(c22, gxyu) * G(c22, 0b10, 0) * G(c22, 0b01, 1) * G(c22, 0b10, 1), 1,
       1e-6},
      {S(c22, V("y") * gxyu1) * G(c22, 0b10, 0) * G(c22, 0b01, 1) *
           G(c22, 0b10, 1),
       1, 1e-6},
      {S(c12, (V("x") + V("y")) * gxy) * G(c12, 0b1, 0), 1, 1e-8},
  };
  QuadratureConfig cfg = gh_config(24);
  cfg.workers = 2;
  for (size_t i = 0; i < suite.size(); ++i) {
    CAPTURE(i);
    CHECK(stokes_residual(suite[i].alpha, suite[i].a, cfg) < suite[i].bound);
  }
}

TEST_CASE("configuration and convergence errors") {
  auto c = make_chart("U", {"x"}, 1);
  QuadratureConfig bad = gh_config();
  bad.nodes = 4;
  PseudoWorm p = PseudoWorm::scalar(c, exp(-(V("x").pow(2)))) *
                 PseudoWorm::from_worm(gen_worm(c, 0b1, 0));
  CHECK_THROWS_AS(integrate(p, bad), std::invalid_argument);
  bad = gh_config();
  bad.method = "monte-carlo";
  CHECK_THROWS_AS(integrate(p, bad), std::invalid_argument);
  bad = gh_config();
  bad.tol = 0;
  CHECK_THROWS_AS(integrate(p, bad), std::invalid_argument);

  // too few nodes for the requested tolerance: error carries the estimate
  QuadratureConfig tight = ts_config(16);
  tight.tol = 1e-14;
  PseudoWorm q = PseudoWorm::scalar(c, exp(-(V("x").pow(2))) * V("x").pow(4)) *
                 PseudoWorm::from_worm(gen_worm(c, 0b1, 0));
  try {
    integrate(q, tight);
    FAIL("expected a convergence error");
  } catch (const IntegrationError& e) {
    CHECK(e.bound > 0);
    CHECK(std::isfinite(e.best));
  }

  // exponent with a quartic even-generator term is rejected
  auto c2 = make_chart("V", {"x"}, 2);
  Worm u = gen_worm(c2, 0b11, 0);
  Worm quartic = Worm::scalar(c2, -(V("x").pow(2))) - u * u * u * u;
  ChartDomain dom;
  CHECK_THROWS_AS(gaussian_integrate(quartic, Worm::scalar(c2, ScalarExpr::constant(1)),
                                     dom, gh_config()),
                  std::invalid_argument);
}

TEST_CASE("flat torus integrates to zero") {
  auto c = make_chart("T", {"x", "y"}, 2);
  MetricSpec m{c, {{ScalarExpr::constant(1), ScalarExpr()},
                   {ScalarExpr(), ScalarExpr::constant(1)}}};
  ChartDomain dom;
  dom.full_space = false;
  dom.box = {{0.0, 1.0}, {0.0, 1.0}};
  IntegrationResult r = euler_worm_integral(m, dom, ts_config(40));
  CHECK(std::abs(r.value) < 1e-6);
}

TEST_CASE("indefinite quadratic form is rejected") {
  auto c = make_chart("T", {"x", "y"}, 2);
  ScalarExpr bad = -(ScalarExpr::constant(1) + V("x").pow(2));
  MetricSpec m{c, {{ScalarExpr::constant(1), ScalarExpr()},
                   {ScalarExpr(), bad}}};
  ChartDomain dom;
  dom.full_space = false;
  dom.box = {{0.0, 1.0}, {0.0, 1.0}};
  QuadratureConfig cfg = ts_config(16);
  cfg.tol = 1.0;
  CHECK_THROWS_AS(euler_worm_integral(m, dom, cfg), std::domain_error);
}

TEST_CASE("sphere integral reproduces the Euler number value") {
  ChartDomain dom;
  QuadratureConfig cfg = ts_config(100);
  cfg.tol = 5e-3;
  cfg.workers = 2;
  double target = -4 * M_PI * M_PI;
  IntegrationResult r1 = euler_worm_integral(stereographic_sphere(1.0), dom, cfg);
  CHECK(r1.value == doctest::Approx(target).epsilon(0.01));
  IntegrationResult r2 = euler_worm_integral(stereographic_sphere(2.0), dom, cfg);
  CHECK(r2.value == doctest::Approx(target).epsilon(0.01));
  CHECK(r1.value == doctest::Approx(r2.value).epsilon(0.01));
}

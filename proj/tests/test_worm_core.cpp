#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "worms/worm.hpp"

using namespace worms;

namespace {

Generator gen(uint8_t mask, int coord) { return Generator{mask, coord}; }

// brute-force sign: bubble-sort a fully expanded word, counting odd-odd swaps
int brute_force_sign(std::vector<Generator> word) {
  int sign = 1;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (size_t i = 0; i + 1 < word.size(); ++i) {
      if (compare(word[i + 1], word[i]) < 0) {
        if (word[i].parity() == 1 && word[i + 1].parity() == 1) sign = -sign;
        std::swap(word[i], word[i + 1]);
        swapped = true;
      }
    }
  }
  for (size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i] == word[i + 1] && word[i].parity() == 1) return 0;
  return sign;
}

Worm random_monomial_worm(const ChartPtr& chart, std::mt19937& rng,
                          int max_factors = 3) {
  std::uniform_int_distribution<int> nf(1, max_factors);
  std::uniform_int_distribution<int> coord(0, chart->dim() - 1);
  std::uniform_int_distribution<int> mask(1, (1 << chart->level) - 1);
  Worm w = Worm::scalar(chart, ScalarExpr::constant(1));
  int n = nf(rng);
  for (int i = 0; i < n; ++i)
    w = w * Worm::generator(chart, gen(static_cast<uint8_t>(mask(rng)),
                                       coord(rng)));
  return w;
}

}  // namespace

TEST_CASE("odd generators anticommute and square to zero") {
  auto chart = make_chart("U", {"x"}, 2);
  Worm d1x = Worm::generator(chart, gen(0b01, 0));
  Worm d2x = Worm::generator(chart, gen(0b10, 0));
  CHECK(d1x * d2x == -(d2x * d1x));
  CHECK((d1x * d1x).is_zero());
}

TEST_CASE("even generators square freely") {
  auto chart = make_chart("U", {"x"}, 2);
  Worm d12x = Worm::generator(chart, gen(0b11, 0));
  Worm sq = d12x * d12x;
  CHECK_FALSE(sq.is_zero());
  WormMonomial m;
  m.factors.push_back({gen(0b11, 0), 2});
  CHECK(sq.coefficient(m) == ScalarExpr::constant(1));
}

TEST_CASE("multidegree and parity") {
  auto chart = make_chart("U", {"x"}, 2);
  Worm d1x = Worm::generator(chart, gen(0b01, 0));
  Worm d12x = Worm::generator(chart, gen(0b11, 0));
  Worm x2 = Worm::scalar(chart, ScalarExpr::variable("x").pow(2));

  CHECK(*d1x.multidegree() == std::vector<int>{1, 0});
  CHECK(*d12x.multidegree() == std::vector<int>{1, 1});
  CHECK(*x2.multidegree() == std::vector<int>{0, 0});
  CHECK(*d1x.parity() == 1);
  CHECK(*d12x.parity() == 0);
  Worm d2x = Worm::generator(chart, gen(0b10, 0));
  CHECK(*(d1x * d2x).parity() == 0);
  CHECK_FALSE((d1x + d12x).parity().has_value());
}

TEST_CASE("super-commutativity on random homogeneous pairs") {
  std::mt19937 rng(21);
  for (int k = 1; k <= 3; ++k) {
    auto chart = make_chart("U", {"x", "y", "z"}, k);
    for (int trial = 0; trial < 340; ++trial) {
      Worm a = random_monomial_worm(chart, rng);
      Worm b = random_monomial_worm(chart, rng);
      auto pa = a.parity(), pb = b.parity();
      REQUIRE(pa.has_value());
      REQUIRE(pb.has_value());
      Worm rhs = b * a;
      if (*pa == 1 && *pb == 1) rhs = -rhs;
      CHECK(a * b == rhs);
    }
  }
}

TEST_CASE("associativity on random triples") {
  std::mt19937 rng(23);
  auto chart = make_chart("U", {"x", "y"}, 3);
  for (int trial = 0; trial < 100; ++trial) {
    Worm a = random_monomial_worm(chart, rng);
    Worm b = random_monomial_worm(chart, rng);
    Worm c = random_monomial_worm(chart, rng);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("canonicalization sign matches brute-force transposition count") {
  std::mt19937 rng(29);
  auto chart = make_chart("U", {"x", "y"}, 3);
  std::uniform_int_distribution<int> coord(0, 1), mask(1, 7), len(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Generator> word;
    int n = len(rng);
    for (int i = 0; i < n; ++i)
      word.push_back(gen(static_cast<uint8_t>(mask(rng)), coord(rng)));
    std::vector<GenPower> raw;
    for (auto& g : word) raw.push_back({g, 1});
    auto [sign, mono] = canonicalize_product(raw);
    CHECK(sign == brute_force_sign(word));
  }
}

TEST_CASE("normalization idempotent") {
  auto chart = make_chart("U", {"x", "y"}, 2);
  Worm d2x = Worm::generator(chart, gen(0b10, 0));
  Worm d1y = Worm::generator(chart, gen(0b01, 1));
  Worm w = d2x * d1y;  // needs reordering
  Worm again = Worm::from_terms(
      chart, std::vector<Worm::Term>(w.terms().begin(), w.terms().end()));
  CHECK(w == again);
}

TEST_CASE("chart mismatch is an error") {
  auto c1 = make_chart("U", {"x"}, 2);
  auto c2 = make_chart("V", {"x"}, 2);
  Worm a = Worm::scalar(c1, ScalarExpr::constant(1));
  Worm b = Worm::scalar(c2, ScalarExpr::constant(1));
  CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("printing") {
  auto chart = make_chart("U", {"x"}, 2);
  Worm w = ScalarExpr::constant(2) * ScalarExpr::variable("x") *
           Worm::generator(chart, gen(0b01, 0));
  CHECK(w.str() == "2*x*d{1}x");
}

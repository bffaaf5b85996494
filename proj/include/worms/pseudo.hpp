#pragma once

#include <map>

#include "worms/worm.hpp"

namespace worms {

/// Monomial in odd generators only, canonical order, each exactly once.
struct OddMono {
  std::vector<Generator> gens;
};

int compare(const OddMono& a, const OddMono& b);
inline bool operator<(const OddMono& a, const OddMono& b) {
  return compare(a, b) < 0;
}
inline bool operator==(const OddMono& a, const OddMono& b) {
  return compare(a, b) == 0;
}

/// Variable name used for an even generator inside coefficients ("d{1,2}x").
std::string even_gen_var(const Generator& g, const Chart& chart);

/// All odd generators of a chart in canonical order.
std::vector<Generator> odd_generators(const Chart& chart);

/// Worm-like object whose coefficients are arbitrary smooth functions of
/// the even variables (chart coordinates and even generators); odd
/// generators remain explicit. Closed under exp of even elements, which
/// polynomial worms are not.
class PseudoWorm {
 public:
  explicit PseudoWorm(ChartPtr chart) : chart_(std::move(chart)) {}

  static PseudoWorm from_worm(const Worm& w);
  static PseudoWorm scalar(ChartPtr chart, ScalarExpr f);

  const ChartPtr& chart() const { return chart_; }
  const std::map<OddMono, ScalarExpr>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(OddMono m, ScalarExpr f);  // m canonical

  PseudoWorm operator+(const PseudoWorm& o) const;
  PseudoWorm operator-(const PseudoWorm& o) const;
  PseudoWorm operator*(const PseudoWorm& o) const;

  std::string str() const;

 private:
  ChartPtr chart_;
  std::map<OddMono, ScalarExpr> terms_;  // zero coefficients dropped
};

/// e^p for p with only even terms (scalar part plus even-length odd
/// monomials); the non-scalar part is nilpotent so the series is finite.
PseudoWorm pseudo_exp(const PseudoWorm& p);

/// The a-th differential extended to pseudodifferential worms.
PseudoWorm d(int a, const PseudoWorm& p);

/// Coefficient of the full odd monomial with respect to the per-coordinate
/// interleaved orientation d_1x^1 d_2x^1 ... d_1x^n d_2x^n ...; lower odd
/// monomials integrate to zero.
ScalarExpr berezin(const PseudoWorm& p);

}  // namespace worms

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "worms/chart.hpp"
#include "worms/scalar_expr.hpp"

namespace worms {

/// Iterated differential d_S x^i: S a nonempty sorted subset of {1..k}
/// stored as a bitmask (bit a-1 for index a), i a coordinate index.
struct Generator {
  uint8_t subset = 0;
  int coord = 0;

  int order() const { return __builtin_popcount(subset); }
  int parity() const { return order() & 1; }
  bool contains(int a) const { return subset & (1u << (a - 1)); }
};

int compare(const Generator& a, const Generator& b);
inline bool operator==(const Generator& a, const Generator& b) {
  return compare(a, b) == 0;
}

std::string subset_str(uint8_t mask);                    // "{1,2}"
std::string generator_name(const Generator& g, const Chart& chart);  // "d{1,2}x"

struct GenPower {
  Generator gen;
  int exp = 1;
};

/// Product of generators in the fixed canonical order; odd generators carry
/// exponent exactly 1.
struct WormMonomial {
  std::vector<GenPower> factors;

  bool empty() const { return factors.empty(); }
  int parity() const;
  std::vector<int> multidegree(int level) const;
};

int compare(const WormMonomial& a, const WormMonomial& b);
inline bool operator==(const WormMonomial& a, const WormMonomial& b) {
  return compare(a, b) == 0;
}
inline bool operator<(const WormMonomial& a, const WormMonomial& b) {
  return compare(a, b) < 0;
}

/// Sorts an arbitrary generator word into the canonical monomial, counting
/// Koszul transpositions. Returns sign 0 if an odd generator repeats.
std::pair<int, WormMonomial> canonicalize_product(std::vector<GenPower> raw);

/// Element of the level-k graded-commutative algebra on a chart.
class Worm {
 public:
  using Term = std::pair<WormMonomial, ScalarExpr>;

  Worm() = default;
  explicit Worm(ChartPtr chart) : chart_(std::move(chart)) {}

  static Worm scalar(ChartPtr chart, ScalarExpr coeff);
  static Worm generator(ChartPtr chart, Generator g);

  const ChartPtr& chart() const { return chart_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of a canonical monomial (zero expression if absent).
  ScalarExpr coefficient(const WormMonomial& m) const;
  ScalarExpr scalar_part() const { return coefficient(WormMonomial{}); }

  std::optional<int> parity() const;                 // nullopt = mixed
  std::optional<std::vector<int>> multidegree() const;  // nullopt = mixed

  Worm operator-() const;
  std::string str() const;

  static Worm from_terms(ChartPtr chart, std::vector<Term> terms);

  friend Worm operator+(const Worm&, const Worm&);
  friend Worm operator-(const Worm&, const Worm&);
  friend Worm operator*(const Worm&, const Worm&);
  friend Worm operator*(const ScalarExpr&, const Worm&);
  friend bool operator==(const Worm&, const Worm&);

 private:
  ChartPtr chart_;
  std::vector<Term> terms_;  // sorted by monomial, nonzero coefficients
};

inline bool operator!=(const Worm& a, const Worm& b) { return !(a == b); }

}  // namespace worms

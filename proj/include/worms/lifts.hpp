#pragma once

#include <functional>
#include <map>
#include <vector>

#include "worms/worm.hpp"

namespace worms {

/// Polynomial in the odd parameters theta^1..theta^k with Worm coefficients.
/// Component T stands for theta^{T,rev} * w_T, where theta^{T,rev} is the
/// product in descending index order (the k=2 expansion convention).
class GrassmannPoly {
 public:
  explicit GrassmannPoly(ChartPtr chart) : chart_(std::move(chart)) {}

  const ChartPtr& chart() const { return chart_; }
  const std::map<uint8_t, Worm>& components() const { return comps_; }
  Worm component(uint8_t mask) const;
  void add_component(uint8_t mask, const Worm& w);

  GrassmannPoly operator+(const GrassmannPoly& other) const;
  /// Requires every component worm to be parity-homogeneous.
  GrassmannPoly operator*(const GrassmannPoly& other) const;

  std::string str() const;

 private:
  ChartPtr chart_;
  std::map<uint8_t, Worm> comps_;  // zero components dropped
};

/// The expansion x^i(theta) = exp(theta^a d_a) x^i(0) for each coordinate.
std::vector<GrassmannPoly> grassmann_expand(const ChartPtr& chart);

/// Vector field on R^{0|k}: sum of terms c * theta^{A,asc} * d/dtheta^a.
struct OddFieldTerm {
  Rational coeff;
  uint8_t theta_mask = 0;  // product in ascending index order
  int dtheta = 1;          // a in d/dtheta^a
};

class OddVectorField {
 public:
  OddVectorField(int level, std::vector<OddFieldTerm> terms);

  static OddVectorField d_theta(int level, int a);  // d/dtheta^a

  int level() const { return level_; }
  int parity() const { return parity_; }
  const std::vector<OddFieldTerm>& terms() const { return terms_; }
  std::string str() const;

 private:
  int level_;
  int parity_;
  std::vector<OddFieldTerm> terms_;
};

/// Bracket computed inside the finite-dimensional Grassmann algebra of
/// R^{0|k} (independent of the lift machinery).
OddVectorField field_bracket(const OddVectorField& u1,
                             const OddVectorField& u2);

struct GrassmannConst;

/// u applied to a constant Grassmann polynomial.
GrassmannConst field_apply_weight(const OddVectorField& u,
                                  const GrassmannConst& f);

/// Product of constant Grassmann polynomials.
GrassmannConst weight_mul(const GrassmannConst& f, const GrassmannConst& g);

/// Operator on worms with a definite parity, composable lazily.
struct WormOperator {
  std::function<Worm(const Worm&)> apply;
  int parity = 0;

  Worm operator()(const Worm& w) const { return apply(w); }
};

/// Generator images of a derivation; extension to all worms is by the
/// graded Leibniz rule and the chain rule on coefficients.
struct GenImages {
  ChartPtr chart;
  int parity = 0;
  std::vector<Worm> coord_image;                    // image of x^i
  std::vector<std::map<uint8_t, Worm>> gen_image;   // [coord][subset]
};

Worm apply_derivation(const GenImages& imgs, const Worm& w);

/// The a-th differential: d_a f = (df/dx^i) d_a x^i on functions,
/// d_a (d_S x^i) = 0 if a in S, else +- d_{S u a} x^i.
Worm d(int a, const Worm& w);
WormOperator d_op(const ChartPtr& chart, int a);

/// Lift u^flat of a vector field on R^{0|k} to the map space.
WormOperator flat_lift(const ChartPtr& chart, const OddVectorField& u);

/// Constant-coefficient Grassmann polynomial on R^{0|k} (the weight f in a
/// Cartan lift f * v^#); component A stands for theta^{A,rev} * c_A.
struct GrassmannConst {
  int level = 0;
  std::map<uint8_t, Rational> comps;

  int parity() const;  // throws if mixed
};

struct CartanLift {
  GrassmannConst f;
  std::vector<ScalarExpr> v;  // components of a vector field on the chart
};

WormOperator cartan_lift(const ChartPtr& chart, const CartanLift& lift);
Worm cartan_apply(const ChartPtr& chart, const CartanLift& lift,
                  const Worm& w);

WormOperator graded_commutator(const WormOperator& A, const WormOperator& B);

/// True when two operators agree on every generator and coordinate.
bool operators_equal_on_generators(const ChartPtr& chart,
                                   const WormOperator& A,
                                   const WormOperator& B);

/// All nonempty subsets of {1..k} as masks, in canonical generator order.
std::vector<uint8_t> generator_subsets(int level);

}  // namespace worms

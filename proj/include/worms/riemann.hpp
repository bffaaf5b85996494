#pragma once

#include "worms/lifts.hpp"

namespace worms {

/// Symmetric metric on a level-2 chart.
struct MetricSpec {
  ChartPtr chart;
  std::vector<std::vector<ScalarExpr>> g;  // n x n, g[i][j] == g[j][i]
};

void validate_metric(const MetricSpec& m);

/// Dense tensor of symbolic components.
struct TensorArray {
  std::vector<int> dims;
  std::vector<ScalarExpr> data;

  explicit TensorArray(std::vector<int> d);
  ScalarExpr& at(const std::vector<int>& idx);
  const ScalarExpr& at(const std::vector<int>& idx) const;
};

/// Exact inverse via adjugate over determinant (n <= 4).
std::vector<std::vector<ScalarExpr>> metric_inverse(const MetricSpec& m);

/// gamma = g_ij d1x^i d2x^j
Worm gamma_of_metric(const MetricSpec& m);

/// d1(d2(gamma)); homogeneous of multidegree (2,2)
Worm d1d2_gamma(const MetricSpec& m);

/// Lowered Christoffel symbols read off the d1d2x^i d1x^j d2x^k block.
TensorArray extract_christoffel(const Worm& w, const MetricSpec& m);

/// Raised Christoffel symbols g^{il} Gamma_{ljk}.
TensorArray christoffel_upper(const MetricSpec& m);

/// Substitute d1d2x^i -> -Gamma^i_jk d1x^j d2x^k everywhere.
Worm critical_substitute(const Worm& w, const MetricSpec& m);

/// Read R_ijkl from the quartic block of a substituted worm.
TensorArray extract_riemann(const Worm& w, const MetricSpec& m);

/// The level-2 operators acting on worms exactly as displayed:
/// E_a^b = d_a x^i d/d(d_b x^i) + delta_a^b d1d2x^i d/d(d1d2x^i)
/// R_a   = eps_ab d_b x^i d/d(d1d2x^i), eps_12 = +1
WormOperator E_op(const ChartPtr& chart, int a, int b);
WormOperator R_op(const ChartPtr& chart, int a);

/// Solution space of the metric-worm conditions R_a w = 0 and
/// E_a^b w = delta_a^b w on worms of multidegree (1,1) with polynomial
/// coefficients of degree <= max_degree. Conditions are read grading-wise:
/// each image is projected back to multidegree (1,1) before being equated
/// (off-diagonal E images land in other bidegrees). With full_conditions
/// the raw images are equated instead.
struct MetricWormBasis {
  int dimension = 0;
  std::vector<Worm> basis;
  bool top_component_zero = true;  // no d1d2x^i in any basis element
};

MetricWormBasis characterize_metric_worms(const ChartPtr& chart,
                                          int max_degree,
                                          bool full_conditions = false);

}  // namespace worms

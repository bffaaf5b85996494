#pragma once

#include "worms/lifts.hpp"
#include "worms/ratlinalg.hpp"

namespace worms {

/// All monomials of a fixed total weight, where every coordinate power and
/// every generator (even generators with multiplicity) weighs 1. Each d_a
/// trades one coordinate power for one generator, so it preserves weight
/// and every graded piece is finite dimensional.
struct WeightedBasis {
  ChartPtr chart;
  int weight = 0;
  std::vector<Worm> elements;  // monomial worms with power-product coefficients
};

WeightedBasis weighted_basis(const ChartPtr& chart, int weight);

/// Matrix of d_a on the span of the basis (columns map to columns).
/// Throws if an image does not lie in the span.
RatMatrix d_matrix(const WeightedBasis& basis, int a);

/// dim ker d_a - rank d_a on each weight piece 0..max_weight. Expected
/// [1, 0, 0, ...] on a polynomial chart. Computed blockwise: d_a preserves
/// the degrees in the other differential directions and the per-coordinate
/// weights, so each weight piece splits into small invariant blocks.
std::vector<int> cohomology_dims(const ChartPtr& chart, int a, int max_weight);

/// Verifies the operator homotopy identities behind the degree argument:
/// the bracket [d/dtheta1, theta1 theta2 d/dtheta2] = theta2 d/dtheta2 and
/// its lift, and for k = 2 the total-degree identity
/// E = [d1, (theta1 theta2 d/dtheta2)^flat]
///   + [d2, (theta2 theta1 d/dtheta1)^flat]
/// with E counting d_a x^i once and d1d2 x^i twice.
bool homotopy_identity_check(int k);

}  // namespace worms

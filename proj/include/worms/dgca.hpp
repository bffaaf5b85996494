#pragma once

#include "worms/lifts.hpp"

namespace worms {

/// Finite-dimensional Lie algebra given by structure constants
/// [e_i, e_j] = c[k][i][j] e_k, antisymmetric in i, j. The Jacobi identity
/// is not assumed; it is equivalent to d^2 = 0 downstream.
struct LieAlgebraSpec {
  int dimension = 0;
  std::vector<std::vector<std::vector<Rational>>> c;  // [k][i][j]
};

void validate_algebra(const LieAlgebraSpec& g);

/// The exterior algebra of the dual space, realized as the level-1 worms
/// with constant coefficients on an r-dimensional chart: e^a = d_1 x^a.
ChartPtr ce_chart(const LieAlgebraSpec& g);
Worm ce_generator(const ChartPtr& chart, int a);  // e^{a+1}, a zero-based

/// d e^a = -1/2 c^a_bc e^b e^c, extended as an odd derivation.
Worm ce_differential(const LieAlgebraSpec& g, const Worm& w);

/// d^2 = 0 on every generator (equivalent to the Jacobi identity).
bool ce_square_zero(const LieAlgebraSpec& g);

/// Connection form A = A^a_i e_a dx^i on a level-1 chart.
struct ConnectionForm {
  ChartPtr chart;
  std::vector<std::vector<ScalarExpr>> a;  // dimension r x n
};

/// Curvature components F^a = d A^a + 1/2 c^a_bc A^b A^c; all zero exactly
/// when e^a -> A^a extends to a map of differential graded algebras.
std::vector<Worm> mc_residual(const LieAlgebraSpec& g,
                              const ConnectionForm& A);

/// Checks the morphism property directly: e^a -> A^a intertwines the two
/// differentials on all generators and quadratic products.
bool dgca_morphism_check(const LieAlgebraSpec& g, const ConnectionForm& A);

}  // namespace worms

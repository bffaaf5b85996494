#pragma once

#include "worms/lifts.hpp"

namespace worms {

/// Smooth map between charts of the same level, given by the target
/// coordinates as functions of the source coordinates.
struct SmoothMap {
  ChartPtr source;
  ChartPtr target;
  std::vector<ScalarExpr> components;  // size = target dim
};

/// Algebra homomorphism phi^* determined by f -> f o phi on functions and
/// commuting with every d_a; sends worms on the target to worms on the
/// source.
Worm pullback(const SmoothMap& phi, const Worm& w);

/// Compose f(vars) with X, where X[i] has a scalar zero-component and
/// nilpotent higher components. Finite Taylor expansion around the scalar
/// parts; the series stops at total theta degree = level.
GrassmannPoly taylor_compose(const ScalarExpr& f,
                             const std::vector<std::string>& vars,
                             const std::vector<GrassmannPoly>& X);

SmoothMap compose(const SmoothMap& f, const SmoothMap& g);  // f after g

}  // namespace worms

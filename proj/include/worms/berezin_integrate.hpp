#pragma once

#include <stdexcept>

#include "worms/pseudo.hpp"
#include "worms/quadrature.hpp"
#include "worms/riemann.hpp"

namespace worms {

struct IntegrationResult {
  double value = 0;
  double est_error = 0;
  long long nodes = 0;
};

/// Thrown when two node counts disagree beyond the tolerance budget;
/// carries the best estimate and the observed error bound.
struct IntegrationError : std::runtime_error {
  double best;
  double bound;
  IntegrationError(double b, double e)
      : std::runtime_error("quadrature did not converge within tolerance"),
        best(b),
        bound(e) {}
};

/// Numeric integral of berezin(p) over the even variables that actually
/// appear in it (a variable the integrand does not depend on would make
/// the integral over the line diverge).
IntegrationResult integrate(const PseudoWorm& p, const QuadratureConfig& cfg);

/// |integrate(d_a alpha)|; small values certify invariance under d.
double stokes_residual(const PseudoWorm& alpha, int a,
                       const QuadratureConfig& cfg);

/// Chart domain: the whole plane minus a measure-zero set, or a box
/// (fundamental domain of a torus).
struct ChartDomain {
  bool full_space = true;
  std::vector<std::pair<double, double>> box;  // used when !full_space
};

/// Integral of prefactor * e^{exponent} where the scalar part of the
/// exponent is s0(x) minus a quadratic form in the even generators. Odd
/// generators are handled by the finite exponential plus Berezin; the even
/// generator directions are integrated exactly via Gaussian moments; the
/// chart coordinates by quadrature over the domain.
IntegrationResult gaussian_integrate(const Worm& exponent,
                                     const Worm& prefactor,
                                     const ChartDomain& dom,
                                     const QuadratureConfig& cfg);

/// Integral of e^{d1 d2 gamma} for the metric worm gamma; the quadratic
/// form -g_ij d1d2x^i d1d2x^j must be negative definite on the domain.
/// Returned with the classical Euler normalization (-pi)^{m/2} S_m chi / 2,
/// which is half of the raw functional integral.
IntegrationResult euler_worm_integral(const MetricSpec& m,
                                      const ChartDomain& dom,
                                      const QuadratureConfig& cfg);

}  // namespace worms

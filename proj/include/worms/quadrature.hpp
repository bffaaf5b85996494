#pragma once

#include <functional>
#include <string>
#include <vector>

namespace worms {

struct QuadratureConfig {
  std::string method = "gauss-hermite";  // or "tanh-sinh-truncated"
  int nodes = 40;                        // per axis
  double radius = 1e8;                   // truncation radius
  double tol = 1e-9;                     // target tolerance
  int workers = 1;
};

void validate_config(const QuadratureConfig& cfg);

/// One quadrature axis; weights are plain, sum w_i f(x_i) ~ integral f dx.
struct Axis {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Gauss-Hermite rule with the Gaussian weight divided back out, so it
/// applies to integrands that already carry their own e^{-x^2} factor.
Axis gauss_hermite_axis(int nodes);

/// Doubly exponential rule for the whole real line, x = sinh(pi/2 sinh t),
/// truncated where |x| reaches the given radius.
Axis tanh_sinh_full_axis(int nodes, double radius);

/// Doubly exponential rule on a finite interval.
Axis tanh_sinh_box_axis(int nodes, double lo, double hi);

Axis full_line_axis(const QuadratureConfig& cfg);

/// Tensor-product quadrature. Cells may be evaluated concurrently; the
/// reduction is a fixed-order pairwise sum, so the result is independent
/// of the worker count.
double integrate_nd(const std::function<double(const std::vector<double>&)>& f,
                    const std::vector<Axis>& axes, int workers);

double pairwise_sum(const std::vector<double>& v);

}  // namespace worms

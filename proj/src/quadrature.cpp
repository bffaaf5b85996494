#include "worms/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace worms {

void validate_config(const QuadratureConfig& cfg) {
  if (cfg.method != "gauss-hermite" && cfg.method != "tanh-sinh-truncated")
    throw std::invalid_argument("unknown quadrature method: " + cfg.method);
  if (cfg.nodes < 8) throw std::invalid_argument("node count must be >= 8");
  if (!(cfg.tol > 0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(cfg.radius > 0)) throw std::invalid_argument("radius must be > 0");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
}

namespace {

// orthonormal Hermite values p_0..p_n at x (weight e^{-x^2})
void hermite_values(int n, double x, std::vector<double>& p) {
  p.resize(n + 1);
  p[0] = 0.7511255444649425;  // pi^{-1/4}
  if (n >= 1) p[1] = std::sqrt(2.0) * x * p[0];
  for (int k = 1; k < n; ++k)
    p[k + 1] = x * std::sqrt(2.0 / (k + 1)) * p[k] -
               std::sqrt(double(k) / (k + 1)) * p[k - 1];
}

}  // namespace

Axis gauss_hermite_axis(int nodes) {
  int n = nodes;
  std::vector<double> roots;
  std::vector<double> p;
  double bound = std::sqrt(2.0 * n + 1.0);
  // scan for sign changes, then polish with Newton; p_n' = sqrt(2n) p_{n-1}
  int grid = 40 * n;
  double prev_x = -bound, prev_v = 0;
  hermite_values(n, prev_x, p);
  prev_v = p[n];
  for (int i = 1; i <= grid; ++i) {
    double x = -bound + 2.0 * bound * i / grid;
    hermite_values(n, x, p);
    double v = p[n];
    if (prev_v == 0.0) roots.push_back(prev_x);
    else if (prev_v * v < 0) {
      double r = 0.5 * (prev_x + x);
      for (int it = 0; it < 60; ++it) {
        hermite_values(n, r, p);
        double dp = std::sqrt(2.0 * n) * p[n - 1];
        double step = p[n] / dp;
        r -= step;
        if (std::abs(step) < 1e-15 * (1 + std::abs(r))) break;
      }
      roots.push_back(r);
    }
    prev_x = x;
    prev_v = v;
  }
  if (static_cast<int>(roots.size()) != n)
    throw std::runtime_error("Hermite root search failed");
  Axis ax;
  for (double r : roots) {
    hermite_values(n, r, p);
    double k = 0;  // Christoffel number: w = 1 / sum_{j<n} p_j(r)^2
    for (int j = 0; j < n; ++j) k += p[j] * p[j];
    ax.points.push_back(r);
    ax.weights.push_back(std::exp(r * r) / k);
  }
  return ax;
}

Axis tanh_sinh_full_axis(int nodes, double radius) {
  // x = sinh(pi/2 sinh t); solve for the t where |x| hits the radius
  double tmax = std::asinh(std::asinh(radius) * 2.0 / M_PI);
  if (tmax > 4.0) tmax = 4.0;
  Axis ax;
  double h = 2.0 * tmax / (nodes - 1);
  for (int j = 0; j < nodes; ++j) {
    double t = -tmax + j * h;
    double s = M_PI_2 * std::sinh(t);
    ax.points.push_back(std::sinh(s));
    ax.weights.push_back(h * M_PI_2 * std::cosh(t) * std::cosh(s));
  }
  return ax;
}

Axis tanh_sinh_box_axis(int nodes, double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("empty interval");
  double c = 0.5 * (lo + hi), w = 0.5 * (hi - lo);
  double tmax = 3.0;
  Axis ax;
  double h = 2.0 * tmax / (nodes - 1);
  for (int j = 0; j < nodes; ++j) {
    double t = -tmax + j * h;
    double s = M_PI_2 * std::sinh(t);
    double ch = std::cosh(s);
    ax.points.push_back(c + w * std::tanh(s));
    ax.weights.push_back(h * w * M_PI_2 * std::cosh(t) / (ch * ch));
  }
  return ax;
}

Axis full_line_axis(const QuadratureConfig& cfg) {
  if (cfg.method == "gauss-hermite") return gauss_hermite_axis(cfg.nodes);
  return tanh_sinh_full_axis(cfg.nodes, cfg.radius);
}

double pairwise_sum(const std::vector<double>& v) {
  std::function<double(size_t, size_t)> rec = [&](size_t lo, size_t hi) {
    if (hi - lo <= 8) {
      double s = 0;
      for (size_t i = lo; i < hi; ++i) s += v[i];
      return s;
    }
    size_t mid = lo + (hi - lo) / 2;
    return rec(lo, mid) + rec(mid, hi);
  };
  return v.empty() ? 0.0 : rec(0, v.size());
}

double integrate_nd(const std::function<double(const std::vector<double>&)>& f,
                    const std::vector<Axis>& axes, int workers) {
  if (axes.empty()) return f({});
  size_t total = 1;
  for (const Axis& a : axes) {
    total *= a.points.size();
    if (total > 200000000ull) throw std::runtime_error("quadrature grid too large");
  }
  std::vector<double> cells(total);
  auto run = [&](size_t lo, size_t hi) {
    std::vector<double> pt(axes.size());
    for (size_t idx = lo; idx < hi; ++idx) {
      size_t rem = idx;
      double w = 1.0;
      for (size_t d = axes.size(); d-- > 0;) {
        size_t m = axes[d].points.size();
        size_t j = rem % m;
        rem /= m;
        pt[d] = axes[d].points[j];
        w *= axes[d].weights[j];
      }
      cells[idx] = w * f(pt);
    }
  };
  int nw = workers;
  if (static_cast<size_t>(nw) > total) nw = static_cast<int>(total);
  if (nw <= 1) {
    run(0, total);
  } else {
    std::vector<std::thread> threads;
    size_t chunk = (total + nw - 1) / nw;
    for (int t = 0; t < nw; ++t) {
      size_t lo = t * chunk, hi = std::min(total, lo + chunk);
      if (lo >= hi) break;
      threads.emplace_back(run, lo, hi);
    }
    for (auto& th : threads) th.join();
  }
  return pairwise_sum(cells);
}

}  // namespace worms

#include "support/oracles.hpp"

#include <stdexcept>

namespace worms::oracle {

namespace {

std::vector<std::vector<ScalarExpr>> gauss_jordan_inverse(
    const std::vector<std::vector<ScalarExpr>>& a) {
  size_t n = a.size();
  std::vector<std::vector<ScalarExpr>> m = a;
  std::vector<std::vector<ScalarExpr>> inv(n, std::vector<ScalarExpr>(n));
  for (size_t i = 0; i < n; ++i) inv[i][i] = ScalarExpr::constant(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::runtime_error("singular matrix in oracle");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    ScalarExpr p = m[col][col];
    for (size_t c = 0; c < n; ++c) {
      m[col][c] = m[col][c] / p;
      inv[col][c] = inv[col][c] / p;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      ScalarExpr f = m[r][col];
      for (size_t c = 0; c < n; ++c) {
        m[r][c] = m[r][c] - f * m[col][c];
        inv[r][c] = inv[r][c] - f * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace

TensorArray christoffel_lower(const MetricSpec& m) {
  int n = m.chart->dim();
  const auto& coords = m.chart->coords;
  TensorArray out({n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out.at({i, j, k}) =
            ScalarExpr::constant(Rational(1, 2)) *
            (m.g[i][j].derivative(coords[k]) +
             m.g[i][k].derivative(coords[j]) -
             m.g[j][k].derivative(coords[i]));
  return out;
}

TensorArray christoffel_upper(const MetricSpec& m) {
  int n = m.chart->dim();
  TensorArray lower = christoffel_lower(m);
  auto inv = gauss_jordan_inverse(m.g);
  TensorArray out({n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ScalarExpr s;
        for (int l = 0; l < n; ++l) s = s + inv[i][l] * lower.at({l, j, k});
        out.at({i, j, k}) = s;
      }
  return out;
}

TensorArray riemann_lower(const MetricSpec& m) {
  int n = m.chart->dim();
  const auto& coords = m.chart->coords;
  TensorArray up = oracle::christoffel_upper(m);
  TensorArray upper_r({n, n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          ScalarExpr s = up.at({i, l, j}).derivative(coords[k]) -
                         up.at({i, k, j}).derivative(coords[l]);
          for (int p = 0; p < n; ++p)
            s = s + up.at({i, k, p}) * up.at({p, l, j}) -
                up.at({i, l, p}) * up.at({p, k, j});
          upper_r.at({i, j, k, l}) = s;
        }
  TensorArray out({n, n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          ScalarExpr s;
          for (int p = 0; p < n; ++p)
            s = s + m.g[i][p] * upper_r.at({p, j, k, l});
          out.at({i, j, k, l}) = s;
        }
  return out;
}

}  // namespace worms::oracle

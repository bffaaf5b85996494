#include "worms/riemann.hpp"

#include <map>
#include <stdexcept>

#include "worms/ratlinalg.hpp"

namespace worms {

namespace {

Worm gen_worm(const ChartPtr& c, uint8_t mask, int coord) {
  return Worm::generator(c, Generator{mask, coord});
}

ScalarExpr det_of(const std::vector<std::vector<ScalarExpr>>& a) {
  size_t n = a.size();
  if (n == 1) return a[0][0];
  ScalarExpr det;
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<ScalarExpr>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<ScalarExpr> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[r][c]);
      minor.push_back(std::move(row));
    }
    ScalarExpr term = a[0][j] * det_of(minor);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace

void validate_metric(const MetricSpec& m) {
  if (!m.chart || m.chart->level != 2)
    throw std::invalid_argument("metric requires a level-2 chart");
  size_t n = m.chart->dim();
  if (m.g.size() != n)
    throw std::invalid_argument("metric size mismatch");
  for (size_t i = 0; i < n; ++i) {
    if (m.g[i].size() != n)
      throw std::invalid_argument("metric size mismatch");
    for (size_t j = 0; j < i; ++j)
      if (m.g[i][j] != m.g[j][i])
        throw std::invalid_argument("metric is not symmetric");
  }
}

TensorArray::TensorArray(std::vector<int> d) : dims(std::move(d)) {
  size_t total = 1;
  for (int x : dims) total *= static_cast<size_t>(x);
  data.resize(total);
}

ScalarExpr& TensorArray::at(const std::vector<int>& idx) {
  size_t off = 0;
  for (size_t k = 0; k < dims.size(); ++k)
    off = off * static_cast<size_t>(dims[k]) + static_cast<size_t>(idx[k]);
  return data[off];
}

const ScalarExpr& TensorArray::at(const std::vector<int>& idx) const {
  return const_cast<TensorArray*>(this)->at(idx);
}

std::vector<std::vector<ScalarExpr>> metric_inverse(const MetricSpec& m) {
  validate_metric(m);
  size_t n = m.g.size();
  if (n > 4)
    throw std::invalid_argument("symbolic inverse limited to n <= 4");
  ScalarExpr det = det_of(m.g);
  if (det.is_zero())
    throw std::invalid_argument("metric is symbolically degenerate");
  std::vector<std::vector<ScalarExpr>> inv(n, std::vector<ScalarExpr>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (n == 1) {
        inv[0][0] = ScalarExpr::constant(1) / det;
        continue;
      }
      std::vector<std::vector<ScalarExpr>> minor;
      for (size_t r = 0; r < n; ++r) {
        if (r == j) continue;  // cofactor C_ji for the transposed adjugate
        std::vector<ScalarExpr> row;
        for (size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m.g[r][c]);
        minor.push_back(std::move(row));
      }
      ScalarExpr cof = det_of(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv[i][j] = cof / det;
    }
  return inv;
}

Worm gamma_of_metric(const MetricSpec& m) {
  validate_metric(m);
  const ChartPtr& c = m.chart;
  Worm out(c);
  for (int i = 0; i < c->dim(); ++i)
    for (int j = 0; j < c->dim(); ++j)
      out = out + m.g[i][j] * (gen_worm(c, 0b01, i) * gen_worm(c, 0b10, j));
  return out;
}

Worm d1d2_gamma(const MetricSpec& m) { return d(1, d(2, gamma_of_metric(m))); }

TensorArray extract_christoffel(const Worm& w, const MetricSpec& m) {
  validate_metric(m);
  const ChartPtr& c = m.chart;
  auto md = w.multidegree();
  if (!w.is_zero() && (!md || *md != std::vector<int>{2, 2}))
    throw std::invalid_argument("worm lacks the multidegree-(2,2) grading");
  int n = c->dim();
  TensorArray gamma({n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<GenPower> word = {{Generator{0b11, i}, 1},
                                      {Generator{0b01, j}, 1},
                                      {Generator{0b10, k}, 1}};
        auto [sign, mono] = canonicalize_product(word);
        ScalarExpr coeff = w.coefficient(mono);
        // the middle block of the expansion is -2 Gamma_ijk u^i d1x^j d2x^k;
        // this sign is the one that makes u^i = -Gamma^i_jk d1x^j d2x^k a
        // genuine critical point of the expansion
        gamma.at({i, j, k}) =
            ScalarExpr::constant(Rational(-sign, 2)) * coeff;
      }
  return gamma;
}

TensorArray christoffel_upper(const MetricSpec& m) {
  TensorArray lower = extract_christoffel(d1d2_gamma(m), m);
  auto inv = metric_inverse(m);
  int n = m.chart->dim();
  TensorArray upper({n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ScalarExpr s;
        for (int l = 0; l < n; ++l) s = s + inv[i][l] * lower.at({l, j, k});
        upper.at({i, j, k}) = s;
      }
  return upper;
}

Worm critical_substitute(const Worm& w, const MetricSpec& m) {
  validate_metric(m);
  const ChartPtr& c = m.chart;
  if (!same_chart(c, w.chart()))
    throw std::invalid_argument("chart mismatch");
  int n = c->dim();
  TensorArray upper = christoffel_upper(m);
  std::vector<Worm> sub(n, Worm(c));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        sub[i] = sub[i] - upper.at({i, j, k}) *
                              (gen_worm(c, 0b01, j) * gen_worm(c, 0b10, k));
  Worm out(c);
  for (auto& [mono, coeff] : w.terms()) {
    Worm piece = Worm::scalar(c, coeff);
    for (auto& [g, e] : mono.factors) {
      if (g.subset == 0b11) {
        for (int r = 0; r < e; ++r) piece = piece * sub[g.coord];
      } else {
        WormMonomial f;
        f.factors.push_back({g, e});
        piece = piece * Worm::from_terms(c, {{f, ScalarExpr::constant(1)}});
      }
    }
    out = out + piece;
  }
  return out;
}

TensorArray extract_riemann(const Worm& w, const MetricSpec& m) {
  validate_metric(m);
  const ChartPtr& c = m.chart;
  auto md = w.multidegree();
  if (!w.is_zero() && (!md || *md != std::vector<int>{2, 2}))
    throw std::invalid_argument("worm lacks the multidegree-(2,2) grading");
  int n = c->dim();
  TensorArray R({n, n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          WormMonomial mono;
          mono.factors = {{Generator{0b01, i}, 1},
                          {Generator{0b01, j}, 1},
                          {Generator{0b10, k}, 1},
                          {Generator{0b10, l}, 1}};
          ScalarExpr r =
              ScalarExpr::constant(Rational(1, 2)) * w.coefficient(mono);
          R.at({i, j, k, l}) = r;
          R.at({j, i, k, l}) = -r;
          R.at({i, j, l, k}) = -r;
          R.at({j, i, l, k}) = r;
        }
  return R;
}

WormOperator E_op(const ChartPtr& chart, int a, int b) {
  if (chart->level != 2)
    throw std::invalid_argument("operator requires level 2");
  GenImages imgs;
  imgs.chart = chart;
  imgs.parity = 0;
  imgs.coord_image.resize(chart->dim(), Worm(chart));
  imgs.gen_image.resize(chart->dim());
  for (int i = 0; i < chart->dim(); ++i) {
    imgs.gen_image[i][static_cast<uint8_t>(1u << (b - 1))] =
        gen_worm(chart, static_cast<uint8_t>(1u << (a - 1)), i);
    if (a == b) imgs.gen_image[i][0b11] = gen_worm(chart, 0b11, i);
  }
  auto p = std::make_shared<GenImages>(std::move(imgs));
  return WormOperator{
      [p](const Worm& w) { return apply_derivation(*p, w); }, 0};
}

WormOperator R_op(const ChartPtr& chart, int a) {
  if (chart->level != 2)
    throw std::invalid_argument("operator requires level 2");
  int b = 3 - a;
  int eps = (a == 1) ? 1 : -1;  // eps_12 = +1
  GenImages imgs;
  imgs.chart = chart;
  imgs.parity = 1;
  imgs.coord_image.resize(chart->dim(), Worm(chart));
  imgs.gen_image.resize(chart->dim());
  for (int i = 0; i < chart->dim(); ++i)
    imgs.gen_image[i][0b11] =
        ScalarExpr::constant(eps) *
        gen_worm(chart, static_cast<uint8_t>(1u << (b - 1)), i);
  auto p = std::make_shared<GenImages>(std::move(imgs));
  return WormOperator{
      [p](const Worm& w) { return apply_derivation(*p, w); }, 1};
}

namespace {

void enumerate_monomials(int nvars, int max_degree, std::vector<int>& cur,
                         int pos, std::vector<std::vector<int>>& out) {
  if (pos == nvars) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (int i = 0; i < pos; ++i) used += cur[i];
  for (int e = 0; e + used <= max_degree; ++e) {
    cur[pos] = e;
    enumerate_monomials(nvars, max_degree, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

ScalarExpr monomial_expr(const ChartPtr& c, const std::vector<int>& alpha) {
  ScalarExpr e = ScalarExpr::constant(1);
  for (int i = 0; i < c->dim(); ++i)
    if (alpha[i] > 0) e = e * c->coord_expr(i).pow(alpha[i]);
  return e;
}

Worm project_multidegree(const Worm& w, const std::vector<int>& md) {
  std::vector<Worm::Term> kept;
  for (auto& t : w.terms())
    if (t.first.multidegree(w.chart()->level) == md) kept.push_back(t);
  return Worm::from_terms(w.chart(), std::move(kept));
}

}  // namespace

MetricWormBasis characterize_metric_worms(const ChartPtr& chart,
                                          int max_degree,
                                          bool full_conditions) {
  if (chart->level != 2)
    throw std::invalid_argument("characterization requires level 2");
  int n = chart->dim();

  std::vector<std::vector<int>> polys;
  std::vector<int> cur(n, 0);
  enumerate_monomials(n, max_degree, cur, 0, polys);

  std::vector<Worm> cand;
  for (auto& alpha : polys) {
    ScalarExpr p = monomial_expr(chart, alpha);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        cand.push_back(p * (gen_worm(chart, 0b01, i) * gen_worm(chart, 0b10, j)));
    for (int i = 0; i < n; ++i)
      cand.push_back(p * gen_worm(chart, 0b11, i));
  }

  struct Condition {
    WormOperator op;
    Rational target;  // op(w) must equal target * w
    bool project;     // compare only the multidegree-(1,1) components
  };
  // R conditions and the diagonal E eigenconditions are imposed in full;
  // the off-diagonal E images leave bidegree (1,1) entirely, so those
  // conditions are read grading-wise unless full_conditions is set
  std::vector<Condition> conds;
  for (int a = 1; a <= 2; ++a)
    conds.push_back({R_op(chart, a), 0, false});
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      conds.push_back({E_op(chart, a, b), a == b ? 1 : 0,
                       a != b && !full_conditions});

  std::vector<int> md11 = {1, 1};
  struct RowKey {
    size_t cond;
    WormMonomial wmono;
    ExprMonomial emono;
    bool operator<(const RowKey& o) const {
      if (cond != o.cond) return cond < o.cond;
      int c = compare(wmono, o.wmono);
      if (c != 0) return c < 0;
      return compare(emono, o.emono) < 0;
    }
  };
  std::map<RowKey, std::map<size_t, Rational>> rows;
  for (size_t t = 0; t < cand.size(); ++t) {
    for (size_t ci = 0; ci < conds.size(); ++ci) {
      Worm img = conds[ci].op(cand[t]);
      if (conds[ci].target != 0)
        img = img - ScalarExpr::constant(conds[ci].target) * cand[t];
      if (conds[ci].project) img = project_multidegree(img, md11);
      for (auto& [mono, coeff] : img.terms())
        for (auto& [emono, q] : coeff.terms())
          rows[{ci, mono, emono}][t] += q;
    }
  }

  RatMatrix M(rows.size(), cand.size());
  size_t r = 0;
  for (auto& [key, entries] : rows) {
    for (auto& [t, q] : entries) M.at(r, t) = q;
    ++r;
  }

  MetricWormBasis out;
  for (auto& v : nullspace(std::move(M))) {
    Worm w(chart);
    for (size_t t = 0; t < cand.size(); ++t)
      if (v[t] != 0)
        w = w + ScalarExpr::constant(v[t]) * cand[t];
    for (auto& [mono, coeff] : w.terms())
      for (auto& [g, e] : mono.factors)
        if (g.subset == 0b11) out.top_component_zero = false;
    out.basis.push_back(std::move(w));
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

}  // namespace worms

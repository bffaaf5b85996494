#include "worms/berezin_integrate.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <set>

namespace worms {

namespace {

struct CoarsePair {
  int fine;
  int coarse;
};

CoarsePair node_counts(const QuadratureConfig& cfg) {
  int coarse = cfg.nodes - std::max(4, cfg.nodes / 8);
  if (coarse < 8) coarse = 8;
  return {cfg.nodes, coarse};
}

// two runs at different node counts; the difference is the error estimate
IntegrationResult run_with_estimate(
    const std::function<double(const std::vector<double>&)>& f,
    const std::function<std::vector<Axis>(int)>& axes_of,
    const QuadratureConfig& cfg) {
  CoarsePair n = node_counts(cfg);
  std::vector<Axis> fine = axes_of(n.fine);
  std::vector<Axis> coarse = axes_of(n.coarse);
  double v1 = integrate_nd(f, fine, cfg.workers);
  double v2 = integrate_nd(f, coarse, cfg.workers);
  IntegrationResult r;
  r.value = v1;
  r.est_error = std::abs(v1 - v2);
  r.nodes = 1;
  for (const Axis& a : fine) r.nodes *= static_cast<long long>(a.points.size());
  long long c = 1;
  for (const Axis& a : coarse) c *= static_cast<long long>(a.points.size());
  r.nodes += c;
  if (r.est_error > cfg.tol * std::max(1.0, std::abs(r.value)))
    throw IntegrationError(r.value, r.est_error);
  return r;
}

bool cholesky(const std::vector<std::vector<double>>& g,
              std::vector<std::vector<double>>& l) {
  size_t m = g.size();
  l.assign(m, std::vector<double>(m, 0.0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      double s = g[i][j];
      for (size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (!(s > 0)) return false;
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return true;
}

// inverse of a positive definite matrix from its Cholesky factor
std::vector<std::vector<double>> chol_inverse(
    const std::vector<std::vector<double>>& l) {
  size_t m = l.size();
  std::vector<std::vector<double>> inv(m, std::vector<double>(m, 0.0));
  for (size_t col = 0; col < m; ++col) {
    std::vector<double> y(m, 0.0);
    for (size_t i = 0; i < m; ++i) {
      double s = (i == col) ? 1.0 : 0.0;
      for (size_t k = 0; k < i; ++k) s -= l[i][k] * y[k];
      y[i] = s / l[i][i];
    }
    for (size_t i = m; i-- > 0;) {
      double s = y[i];
      for (size_t k = i + 1; k < m; ++k) s -= l[k][i] * inv[k][col];
      inv[i][col] = s / l[i][i];
    }
  }
  return inv;
}

// centered Gaussian moment E[u^alpha] for covariance sigma
double gaussian_moment(const std::vector<int>& alpha,
                       const std::vector<std::vector<double>>& sigma,
                       std::map<std::vector<int>, double>& memo) {
  size_t m = alpha.size();
  size_t i = 0;
  while (i < m && alpha[i] == 0) ++i;
  if (i == m) return 1.0;
  auto it = memo.find(alpha);
  if (it != memo.end()) return it->second;
  std::vector<int> rest = alpha;
  rest[i] -= 1;
  double s = 0;
  for (size_t j = 0; j < m; ++j) {
    if (rest[j] == 0) continue;
    std::vector<int> next = rest;
    next[j] -= 1;
    s += sigma[i][j] * rest[j] * gaussian_moment(next, sigma, memo);
  }
  memo[alpha] = s;
  return s;
}

// split one coefficient into a multi-index over the listed variables and
// the residual factor; rejects those variables inside function arguments
std::vector<std::pair<std::vector<int>, ScalarExpr>> split_by_vars(
    const ScalarExpr& e, const std::vector<std::string>& vars) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < vars.size(); ++i) index[vars[i]] = i;
  std::map<std::vector<int>, ScalarExpr> acc;
  for (const auto& [mono, rat] : e.terms()) {
    std::vector<int> alpha(vars.size(), 0);
    ExprMonomial rest;
    for (const auto& [atom, exp] : mono.factors) {
      if (atom.kind == Atom::Kind::Var && index.count(atom.var)) {
        if (exp < 0) throw std::invalid_argument("negative generator power");
        alpha[index.at(atom.var)] += exp;
        continue;
      }
      if (atom.kind != Atom::Kind::Var && atom.arg) {
        std::set<std::string> inner = atom.arg->variables();
        for (const std::string& v : vars)
          if (inner.count(v))
            throw std::invalid_argument(
                "generator variable inside a function argument");
      }
      rest.factors.emplace_back(atom, exp);
    }
    ScalarExpr part = ScalarExpr::from_terms({{rest, rat}});
    auto it = acc.find(alpha);
    if (it == acc.end()) acc.emplace(alpha, part);
    else it->second = it->second + part;
  }
  std::vector<std::pair<std::vector<int>, ScalarExpr>> out;
  for (auto& [a, f] : acc)
    if (!f.is_zero()) out.emplace_back(a, std::move(f));
  return out;
}

}  // namespace

IntegrationResult integrate(const PseudoWorm& p, const QuadratureConfig& cfg) {
  validate_config(cfg);
  ScalarExpr f = berezin(p);
  if (f.is_zero()) return IntegrationResult{0.0, 0.0, 0};
  std::set<std::string> vset = f.variables();
  std::vector<std::string> vars(vset.begin(), vset.end());
  auto integrand = [&](const std::vector<double>& pt) {
    std::map<std::string, double> at;
    for (size_t i = 0; i < vars.size(); ++i) at[vars[i]] = pt[i];
    return f.eval(at);
  };
  auto axes_of = [&](int n) {
    QuadratureConfig c = cfg;
    c.nodes = n;
    return std::vector<Axis>(vars.size(), full_line_axis(c));
  };
  return run_with_estimate(integrand, axes_of, cfg);
}

double stokes_residual(const PseudoWorm& alpha, int a,
                       const QuadratureConfig& cfg) {
  return std::abs(integrate(d(a, alpha), cfg).value);
}

IntegrationResult gaussian_integrate(const Worm& exponent,
                                     const Worm& prefactor,
                                     const ChartDomain& dom,
                                     const QuadratureConfig& cfg) {
  validate_config(cfg);
  const ChartPtr& chart = exponent.chart();
  if (!chart) throw std::invalid_argument("exponent has no chart");
  if (!dom.full_space &&
      static_cast<int>(dom.box.size()) != chart->dim())
    throw std::invalid_argument("box dimension mismatch");

  PseudoWorm pw = PseudoWorm::from_worm(exponent);
  ScalarExpr s;
  PseudoWorm nil(chart);
  for (const auto& [m, c] : pw.terms()) {
    if (m.gens.empty()) s = c;
    else nil.add_term(m, c);
  }
  ScalarExpr top = berezin(PseudoWorm::from_worm(prefactor) * pseudo_exp(nil));

  // even generator variables that occur anywhere
  std::set<std::string> used = s.variables();
  top.collect_variables(used);
  std::vector<std::string> uvars;
  for (uint8_t mask = 1; mask < (1u << chart->level); ++mask) {
    if (__builtin_popcount(mask) & 1) continue;
    for (int i = 0; i < chart->dim(); ++i) {
      std::string name = even_gen_var(Generator{mask, i}, *chart);
      if (used.count(name)) uvars.push_back(name);
    }
  }
  size_t m = uvars.size();

  // scalar part: s0(x) - u^T G u
  ScalarExpr s0;
  std::vector<std::vector<ScalarExpr>> gsym(m, std::vector<ScalarExpr>(m));
  for (const auto& [alpha, part] : split_by_vars(s, uvars)) {
    int deg = 0;
    for (int a : alpha) deg += a;
    if (deg == 0) {
      s0 = s0 + part;
    } else if (deg == 2) {
      size_t i = 0;
      while (alpha[i] == 0) ++i;
      if (alpha[i] == 2) {
        gsym[i][i] = gsym[i][i] - part;
      } else {
        size_t j = i + 1;
        while (alpha[j] == 0) ++j;
        ScalarExpr half = ScalarExpr::constant(Rational(-1, 2)) * part;
        gsym[i][j] = gsym[i][j] + half;
        gsym[j][i] = gsym[j][i] + half;
      }
    } else {
      throw std::invalid_argument(
          "exponent is not quadratic in the even generators");
    }
  }
  auto top_parts = split_by_vars(top, uvars);

  std::atomic<bool> bad{false};
  auto integrand = [&](const std::vector<double>& pt) -> double {
    if (bad.load()) return 0.0;
    std::map<std::string, double> at;
    for (int i = 0; i < chart->dim(); ++i) at[chart->coords[i]] = pt[i];
    double norm = 1.0;
    std::vector<std::vector<double>> sigma;
    if (m > 0) {
      std::vector<std::vector<double>> g(m, std::vector<double>(m));
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) g[i][j] = gsym[i][j].eval(at);
      std::vector<std::vector<double>> l;
      if (!cholesky(g, l)) {
        bad.store(true);
        return 0.0;
      }
      double det = 1.0;
      for (size_t i = 0; i < m; ++i) det *= l[i][i] * l[i][i];
      norm = std::pow(M_PI, 0.5 * m) / std::sqrt(det);
      sigma = chol_inverse(l);
      for (auto& row : sigma)
        for (double& v : row) v *= 0.5;
    }
    std::map<std::vector<int>, double> memo;
    double poly = 0.0;
    for (const auto& [alpha, coeff] : top_parts)
      poly += coeff.eval(at) * gaussian_moment(alpha, sigma, memo);
    return std::exp(s0.eval(at)) * norm * poly;
  };

  auto axes_of = [&](int n) {
    QuadratureConfig c = cfg;
    c.nodes = n;
    std::vector<Axis> axes;
    for (int i = 0; i < chart->dim(); ++i) {
      if (dom.full_space) axes.push_back(full_line_axis(c));
      else axes.push_back(tanh_sinh_box_axis(n, dom.box[i].first,
                                             dom.box[i].second));
    }
    return axes;
  };

  IntegrationResult r;
  if (top_parts.empty()) {
    r = IntegrationResult{0.0, 0.0, 0};
  } else {
    try {
      r = run_with_estimate(integrand, axes_of, cfg);
    } catch (const IntegrationError&) {
      if (bad.load())
        throw std::domain_error(
            "quadratic form not positive definite at a sample point");
      throw;
    }
  }
  if (bad.load())
    throw std::domain_error(
        "quadratic form not positive definite at a sample point");
  return r;
}

IntegrationResult euler_worm_integral(const MetricSpec& m,
                                      const ChartDomain& dom,
                                      const QuadratureConfig& cfg) {
  validate_metric(m);
  Worm one = Worm::scalar(m.chart, ScalarExpr::constant(1));
  IntegrationResult r = gaussian_integrate(d1d2_gamma(m), one, dom, cfg);
  // report the classically normalized Euler value: the raw functional
  // integral is twice the (-pi)^{m/2} S_m chi / 2 constant
  r.value *= 0.5;
  r.est_error *= 0.5;
  return r;
}

}  // namespace worms

#include "worms/lifts.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "worms/pullback.hpp"

namespace worms {

namespace {

Worm monomial_worm(const ChartPtr& chart, const WormMonomial& m) {
  return Worm::from_terms(chart, {{m, ScalarExpr::constant(1)}});
}

// sign of sorting theta^{A,rev} * theta^{B,rev} into theta^{A|B,rev};
// both factors are descending words, so only cross pairs can invert.
int rev_concat_sign(uint8_t a_mask, uint8_t b_mask) {
  int inversions = 0;
  for (int x = 1; x <= 8; ++x) {
    if (!(a_mask & (1u << (x - 1)))) continue;
    for (int y = x + 1; y <= 8; ++y)
      if (b_mask & (1u << (y - 1))) ++inversions;
  }
  return (inversions & 1) ? -1 : 1;
}

// theta^{A,asc} = asc_to_rev_sign(A) * theta^{A,rev}
int asc_to_rev_sign(uint8_t mask) {
  int m = std::popcount(mask);
  return ((m * (m - 1) / 2) & 1) ? -1 : 1;
}

// left derivative d/dtheta^a of the descending word theta^{T,rev}
int left_derivative_sign(int a, uint8_t t_mask) {
  int above = 0;
  for (int t = a + 1; t <= 8; ++t)
    if (t_mask & (1u << (t - 1))) ++above;
  return (above & 1) ? -1 : 1;
}

int mask_parity(uint8_t mask) { return std::popcount(mask) & 1; }

}  // namespace

Worm GrassmannPoly::component(uint8_t mask) const {
  auto it = comps_.find(mask);
  if (it != comps_.end()) return it->second;
  return Worm(chart_);
}

void GrassmannPoly::add_component(uint8_t mask, const Worm& w) {
  auto it = comps_.find(mask);
  if (it == comps_.end()) {
    if (!w.is_zero()) comps_.emplace(mask, w);
    return;
  }
  it->second = it->second + w;
  if (it->second.is_zero()) comps_.erase(it);
}

GrassmannPoly GrassmannPoly::operator+(const GrassmannPoly& other) const {
  if (!same_chart(chart_, other.chart_))
    throw std::invalid_argument("chart mismatch");
  GrassmannPoly out = *this;
  for (auto& [mask, w] : other.comps_) out.add_component(mask, w);
  return out;
}

GrassmannPoly GrassmannPoly::operator*(const GrassmannPoly& other) const {
  if (!same_chart(chart_, other.chart_))
    throw std::invalid_argument("chart mismatch");
  GrassmannPoly out(chart_);
  for (auto& [a_mask, u] : comps_) {
    auto pu = u.parity();
    if (!pu)
      throw std::invalid_argument("component worm has mixed parity");
    for (auto& [b_mask, v] : other.comps_) {
      if (a_mask & b_mask) continue;
      int sign = rev_concat_sign(a_mask, b_mask);
      if (*pu == 1 && mask_parity(b_mask) == 1) sign = -sign;
      Worm piece = u * v;
      if (sign < 0) piece = -piece;
      out.add_component(static_cast<uint8_t>(a_mask | b_mask), piece);
    }
  }
  return out;
}

std::string GrassmannPoly::str() const {
  if (comps_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [mask, w] : comps_) {
    if (!first) os << " + ";
    first = false;
    if (mask == 0) {
      os << w.str();
      continue;
    }
    for (int a = 8; a >= 1; --a)
      if (mask & (1u << (a - 1))) os << "t" << a << "*";
    os << "(" << w.str() << ")";
  }
  return os.str();
}

std::vector<uint8_t> generator_subsets(int level) {
  std::vector<uint8_t> out;
  for (int m = 1; m < (1 << level); ++m) out.push_back(static_cast<uint8_t>(m));
  std::sort(out.begin(), out.end(), [](uint8_t a, uint8_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

std::vector<GrassmannPoly> grassmann_expand(const ChartPtr& chart) {
  std::vector<GrassmannPoly> out;
  for (int i = 0; i < chart->dim(); ++i) {
    GrassmannPoly x(chart);
    x.add_component(0, Worm::scalar(chart, chart->coord_expr(i)));
    for (uint8_t s : generator_subsets(chart->level))
      x.add_component(s, Worm::generator(chart, Generator{s, i}));
    out.push_back(std::move(x));
  }
  return out;
}

OddVectorField::OddVectorField(int level, std::vector<OddFieldTerm> terms)
    : level_(level), parity_(0) {
  if (level < 1 || level > 8)
    throw std::invalid_argument("level out of range");
  std::map<std::pair<int, uint8_t>, Rational> acc;
  for (auto& t : terms) {
    if (t.dtheta < 1 || t.dtheta > level)
      throw std::invalid_argument("dtheta index out of range");
    if (t.theta_mask >= (1u << level))
      throw std::invalid_argument("theta index out of range");
    acc[{t.dtheta, t.theta_mask}] += t.coeff;
  }
  for (auto& [key, c] : acc) {
    if (c == 0) continue;
    terms_.push_back({c, key.second, key.first});
  }
  if (!terms_.empty()) {
    parity_ = (std::popcount(terms_[0].theta_mask) + 1) & 1;
    for (auto& t : terms_)
      if (((std::popcount(t.theta_mask) + 1) & 1) != parity_)
        throw std::invalid_argument("mixed-parity vector field");
  }
}

OddVectorField OddVectorField::d_theta(int level, int a) {
  return OddVectorField(level, {{Rational(1), 0, a}});
}

std::string OddVectorField::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    if (t.coeff != 1) os << rational_str(t.coeff) << "*";
    for (int a = 1; a <= level_; ++a)
      if (t.theta_mask & (1u << (a - 1))) os << "t" << a << "*";
    os << "D" << t.dtheta;
  }
  return os.str();
}

namespace {

using GrassElem = std::map<uint8_t, Rational>;  // rev-word coefficients

GrassElem field_apply(const OddVectorField& u, const GrassElem& e,
                      int level) {
  GrassElem out;
  for (auto& t : u.terms()) {
    for (auto& [mask, c] : e) {
      if (!(mask & (1u << (t.dtheta - 1)))) continue;
      int sign = left_derivative_sign(t.dtheta, mask);
      uint8_t rest = mask & ~(1u << (t.dtheta - 1));
      if (t.theta_mask & rest) continue;
      sign *= asc_to_rev_sign(t.theta_mask) *
              rev_concat_sign(t.theta_mask, rest);
      Rational v = t.coeff * c;
      if (sign < 0) v = -v;
      out[t.theta_mask | rest] += v;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  (void)level;
  return out;
}

}  // namespace

OddVectorField field_bracket(const OddVectorField& u1,
                             const OddVectorField& u2) {
  if (u1.level() != u2.level())
    throw std::invalid_argument("level mismatch");
  int level = u1.level();
  int koszul = (u1.parity() == 1 && u2.parity() == 1) ? -1 : 1;
  std::vector<OddFieldTerm> terms;
  for (int a = 1; a <= level; ++a) {
    GrassElem theta_a{{static_cast<uint8_t>(1u << (a - 1)), Rational(1)}};
    GrassElem w;
    for (auto& [mask, c] :
         field_apply(u1, field_apply(u2, theta_a, level), level))
      w[mask] += c;
    for (auto& [mask, c] :
         field_apply(u2, field_apply(u1, theta_a, level), level))
      w[mask] -= koszul * c;
    for (auto& [mask, c] : w) {
      if (c == 0) continue;
      Rational v = (asc_to_rev_sign(mask) < 0) ? Rational(-c) : c;
      terms.push_back({v, mask, a});
    }
  }
  return OddVectorField(level, std::move(terms));
}

GrassmannConst field_apply_weight(const OddVectorField& u,
                                  const GrassmannConst& f) {
  if (f.level != u.level())
    throw std::invalid_argument("level mismatch");
  GrassmannConst out;
  out.level = f.level;
  for (auto& [mask, c] : field_apply(u, f.comps, u.level()))
    out.comps[mask] = c;
  return out;
}

GrassmannConst weight_mul(const GrassmannConst& f, const GrassmannConst& g) {
  if (f.level != g.level)
    throw std::invalid_argument("level mismatch");
  GrassmannConst out;
  out.level = f.level;
  for (auto& [a, ca] : f.comps)
    for (auto& [b, cb] : g.comps) {
      if (a & b) continue;
      Rational v = ca * cb;
      if (rev_concat_sign(a, b) < 0) v = -v;
      out.comps[a | b] += v;
    }
  for (auto it = out.comps.begin(); it != out.comps.end();)
    it = (it->second == 0) ? out.comps.erase(it) : std::next(it);
  return out;
}

Worm apply_derivation(const GenImages& imgs, const Worm& w) {
  const ChartPtr& chart = imgs.chart;
  if (!same_chart(chart, w.chart()))
    throw std::invalid_argument("chart mismatch");
  Worm out(chart);
  for (auto& [mono, coeff] : w.terms()) {
    Worm mono_w = monomial_worm(chart, mono);
    // chain rule on the coefficient
    for (int i = 0; i < chart->dim(); ++i) {
      ScalarExpr df = coeff.derivative(chart->coords[i]);
      if (df.is_zero() || imgs.coord_image[i].is_zero()) continue;
      out = out + (df * imgs.coord_image[i]) * mono_w;
    }
    // graded Leibniz rule across the generator factors
    int prefix_parity = 0;
    for (size_t j = 0; j < mono.factors.size(); ++j) {
      const auto& [g, e] = mono.factors[j];
      auto img_it = imgs.gen_image[g.coord].find(g.subset);
      if (img_it != imgs.gen_image[g.coord].end() &&
          !img_it->second.is_zero()) {
        WormMonomial prefix, suffix;
        prefix.factors.assign(mono.factors.begin(), mono.factors.begin() + j);
        suffix.factors.assign(mono.factors.begin() + j + 1,
                              mono.factors.end());
        Worm piece = monomial_worm(chart, prefix);
        if (g.parity() == 1) {
          piece = piece * img_it->second;
        } else {
          WormMonomial lower;
          if (e > 1) lower.factors.push_back({g, e - 1});
          piece = ScalarExpr::constant(e) * (piece * monomial_worm(chart, lower));
          piece = piece * img_it->second;
        }
        piece = coeff * (piece * monomial_worm(chart, suffix));
        if ((imgs.parity & prefix_parity) == 1) piece = -piece;
        out = out + piece;
      }
      prefix_parity = (prefix_parity + g.parity() * e) & 1;
    }
  }
  return out;
}

namespace {

GenImages d_images(const ChartPtr& chart, int a) {
  if (a < 1 || a > chart->level)
    throw std::invalid_argument("differential index out of range");
  GenImages imgs;
  imgs.chart = chart;
  imgs.parity = 1;
  imgs.coord_image.resize(chart->dim(), Worm(chart));
  imgs.gen_image.resize(chart->dim());
  uint8_t a_bit = static_cast<uint8_t>(1u << (a - 1));
  for (int i = 0; i < chart->dim(); ++i) {
    imgs.coord_image[i] = Worm::generator(chart, Generator{a_bit, i});
    for (uint8_t s : generator_subsets(chart->level)) {
      if (s & a_bit) continue;
      int below = std::popcount(static_cast<uint8_t>(s & (a_bit - 1)));
      Worm img = Worm::generator(
          chart, Generator{static_cast<uint8_t>(s | a_bit), i});
      imgs.gen_image[i][s] = (below & 1) ? -img : img;
    }
  }
  return imgs;
}

// generator images from the superfield equation D(x^i(theta)) = G^i,
// reading off D(d_T x^i) = (-1)^{parity(D)*|T|} G^i_T
GenImages images_from_superfield(const ChartPtr& chart, int parity,
                                 const std::vector<GrassmannPoly>& G) {
  GenImages imgs;
  imgs.chart = chart;
  imgs.parity = parity;
  imgs.coord_image.resize(chart->dim(), Worm(chart));
  imgs.gen_image.resize(chart->dim());
  for (int i = 0; i < chart->dim(); ++i) {
    for (auto& [mask, w] : G[i].components()) {
      if (mask == 0) {
        imgs.coord_image[i] = w;
      } else {
        Worm img = w;
        if (parity == 1 && (std::popcount(mask) & 1)) img = -img;
        imgs.gen_image[i][mask] = img;
      }
    }
  }
  return imgs;
}

}  // namespace

Worm d(int a, const Worm& w) {
  return apply_derivation(d_images(w.chart(), a), w);
}

WormOperator d_op(const ChartPtr& chart, int a) {
  auto imgs = std::make_shared<GenImages>(d_images(chart, a));
  return WormOperator{
      [imgs](const Worm& w) { return apply_derivation(*imgs, w); }, 1};
}

WormOperator flat_lift(const ChartPtr& chart, const OddVectorField& u) {
  if (u.level() != chart->level)
    throw std::invalid_argument("level mismatch");
  int parity = u.parity();
  // G^i = -u applied to the theta dependence of x^i(theta); the global
  // minus makes the lift a bracket homomorphism and gives the classical
  // specializations (d/dtheta lifts to -d, theta v lifts to -i_v)
  std::vector<GrassmannPoly> G(chart->dim(), GrassmannPoly(chart));
  for (int i = 0; i < chart->dim(); ++i) {
    for (auto& t : u.terms()) {
      uint8_t a_bit = static_cast<uint8_t>(1u << (t.dtheta - 1));
      for (int tm = 1; tm < (1 << chart->level); ++tm) {
        uint8_t t_mask = static_cast<uint8_t>(tm);
        if (!(t_mask & a_bit)) continue;
        uint8_t rest = t_mask & ~a_bit;
        if (t.theta_mask & rest) continue;
        int sign = -left_derivative_sign(t.dtheta, t_mask) *
                   asc_to_rev_sign(t.theta_mask) *
                   rev_concat_sign(t.theta_mask, rest);
        ScalarExpr c = ScalarExpr::constant(sign < 0 ? Rational(-t.coeff)
                                                     : t.coeff);
        G[i].add_component(t.theta_mask | rest,
                           c * Worm::generator(chart, Generator{t_mask, i}));
      }
    }
  }
  auto imgs = std::make_shared<GenImages>(
      images_from_superfield(chart, parity, G));
  return WormOperator{
      [imgs](const Worm& w) { return apply_derivation(*imgs, w); }, parity};
}

int GrassmannConst::parity() const {
  std::optional<int> p;
  for (auto& [mask, c] : comps) {
    if (c == 0) continue;
    int mp = std::popcount(mask) & 1;
    if (p && *p != mp)
      throw std::invalid_argument("mixed-parity Grassmann weight");
    p = mp;
  }
  return p.value_or(0);
}

WormOperator cartan_lift(const ChartPtr& chart, const CartanLift& lift) {
  if (lift.f.level != chart->level)
    throw std::invalid_argument("level mismatch");
  if (static_cast<int>(lift.v.size()) != chart->dim())
    throw std::invalid_argument("vector field dimension mismatch");
  int parity = lift.f.parity();
  GrassmannPoly fw(chart);
  for (auto& [mask, c] : lift.f.comps)
    fw.add_component(mask, Worm::scalar(chart, ScalarExpr::constant(c)));
  auto X = grassmann_expand(chart);
  std::vector<GrassmannPoly> G;
  for (int i = 0; i < chart->dim(); ++i)
    G.push_back(fw * taylor_compose(lift.v[i], chart->coords, X));
  auto imgs = std::make_shared<GenImages>(
      images_from_superfield(chart, parity, G));
  return WormOperator{
      [imgs](const Worm& w) { return apply_derivation(*imgs, w); }, parity};
}

Worm cartan_apply(const ChartPtr& chart, const CartanLift& lift,
                  const Worm& w) {
  return cartan_lift(chart, lift)(w);
}

WormOperator graded_commutator(const WormOperator& A, const WormOperator& B) {
  int koszul = (A.parity == 1 && B.parity == 1) ? -1 : 1;
  auto fa = A.apply, fb = B.apply;
  return WormOperator{
      [fa, fb, koszul](const Worm& w) {
        Worm ab = fa(fb(w)), ba = fb(fa(w));
        return koszul < 0 ? ab + ba : ab - ba;
      },
      (A.parity + B.parity) & 1};
}

bool operators_equal_on_generators(const ChartPtr& chart,
                                   const WormOperator& A,
                                   const WormOperator& B) {
  for (int i = 0; i < chart->dim(); ++i) {
    Worm xi = Worm::scalar(chart, chart->coord_expr(i));
    if (A(xi) != B(xi)) return false;
    for (uint8_t s : generator_subsets(chart->level)) {
      Worm g = Worm::generator(chart, Generator{s, i});
      if (A(g) != B(g)) return false;
    }
  }
  return true;
}

}  // namespace worms

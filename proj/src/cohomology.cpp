#include "worms/cohomology.hpp"

#include <map>
#include <stdexcept>

namespace worms {

namespace {

std::vector<Generator> all_generators(const Chart& chart) {
  std::vector<Generator> out;
  for (uint8_t mask : generator_subsets(chart.level))
    for (int i = 0; i < chart.dim(); ++i) out.push_back(Generator{mask, i});
  return out;
}

void enumerate_coord_powers(const Chart& chart, int coord, int remaining,
                            std::vector<int>& powers,
                            const WormMonomial& mono,
                            std::vector<Worm>& out, const ChartPtr& cp) {
  if (coord == chart.dim() - 1) {
    powers[coord] = remaining;
    ScalarExpr c = ScalarExpr::constant(1);
    for (int i = 0; i < chart.dim(); ++i)
      if (powers[i] > 0) c = c * chart.coord_expr(i).pow(powers[i]);
    out.push_back(Worm::from_terms(cp, {{mono, c}}));
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    powers[coord] = e;
    enumerate_coord_powers(chart, coord + 1, remaining - e, powers, mono, out,
                           cp);
  }
}

void enumerate_monomials(const ChartPtr& cp,
                         const std::vector<Generator>& gens, size_t pos,
                         int remaining, std::vector<GenPower>& factors,
                         std::vector<Worm>& out) {
  if (pos == gens.size()) {
    WormMonomial mono{factors};
    std::vector<int> powers(cp->dim(), 0);
    if (cp->dim() == 0) return;
    enumerate_coord_powers(*cp, 0, remaining, powers, mono, out, cp);
    return;
  }
  const Generator& g = gens[pos];
  int maxe = g.parity() == 1 ? std::min(1, remaining) : remaining;
  for (int e = 0; e <= maxe; ++e) {
    if (e > 0) factors.push_back(GenPower{g, e});
    enumerate_monomials(cp, gens, pos + 1, remaining - e, factors, out);
    if (e > 0) factors.pop_back();
  }
}

struct BasisKey {
  WormMonomial mono;
  ExprMonomial coeff;

  bool operator<(const BasisKey& o) const {
    int c = compare(mono, o.mono);
    if (c != 0) return c < 0;
    return compare(coeff, o.coeff) < 0;
  }
};

BasisKey key_of_element(const Worm& w) {
  if (w.terms().size() != 1)
    throw std::invalid_argument("basis element is not a monomial");
  const auto& [mono, ce] = w.terms()[0];
  if (ce.terms().size() != 1 || ce.terms()[0].second != Rational(1))
    throw std::invalid_argument("basis coefficient is not a plain monomial");
  return BasisKey{mono, ce.terms()[0].first};
}

// degrees in the directions other than a, plus per-coordinate weights;
// all preserved by d_a, so they split each weight piece into blocks
std::vector<int> block_key(const Worm& w, int a) {
  BasisKey k = key_of_element(w);
  const Chart& chart = *w.chart();
  std::vector<int> out;
  for (int b = 1; b <= chart.level; ++b) {
    if (b == a) continue;
    int deg = 0;
    for (const GenPower& gp : k.mono.factors)
      if (gp.gen.contains(b)) deg += gp.exp;
    out.push_back(deg);
  }
  for (int i = 0; i < chart.dim(); ++i) {
    int wi = 0;
    for (const GenPower& gp : k.mono.factors)
      if (gp.gen.coord == i) wi += gp.exp;
    for (const auto& [atom, e] : k.coeff.factors)
      if (atom.kind == Atom::Kind::Var && atom.var == chart.coords[i]) wi += e;
    out.push_back(wi);
  }
  return out;
}

}  // namespace

WeightedBasis weighted_basis(const ChartPtr& chart, int weight) {
  if (!chart) throw std::invalid_argument("null chart");
  if (weight < 0) throw std::invalid_argument("negative weight");
  WeightedBasis b{chart, weight, {}};
  std::vector<GenPower> factors;
  enumerate_monomials(chart, all_generators(*chart), 0, weight, factors,
                      b.elements);
  return b;
}

RatMatrix d_matrix(const WeightedBasis& basis, int a) {
  std::map<BasisKey, size_t> index;
  for (size_t j = 0; j < basis.elements.size(); ++j)
    index.emplace(key_of_element(basis.elements[j]), j);
  size_t n = basis.elements.size();
  RatMatrix m(n, n);
  for (size_t j = 0; j < n; ++j) {
    Worm img = d(a, basis.elements[j]);
    for (const auto& [mono, ce] : img.terms()) {
      if (ce.has_function_atoms())
        throw std::invalid_argument("non-polynomial coefficient");
      for (const auto& [em, rat] : ce.terms()) {
        auto it = index.find(BasisKey{mono, em});
        if (it == index.end())
          throw std::runtime_error("differential image leaves the basis");
        m.at(it->second, j) = m.at(it->second, j) + rat;
      }
    }
  }
  return m;
}

std::vector<int> cohomology_dims(const ChartPtr& chart, int a,
                                 int max_weight) {
  std::vector<int> out;
  for (int w = 0; w <= max_weight; ++w) {
    WeightedBasis basis = weighted_basis(chart, w);
    std::map<std::vector<int>, std::vector<Worm>> blocks;
    for (const Worm& e : basis.elements)
      blocks[block_key(e, a)].push_back(e);
    int betti = 0;
    for (auto& [key, elems] : blocks) {
      WeightedBasis sub{chart, w, elems};
      RatMatrix m = d_matrix(sub, a);
      size_t r = rank(m);
      betti += static_cast<int>(elems.size() - 2 * r);
    }
    out.push_back(betti);
  }
  return out;
}

namespace {

bool same_field(const OddVectorField& a, const OddVectorField& b) {
  if (a.level() != b.level() || a.terms().size() != b.terms().size())
    return false;
  for (size_t i = 0; i < a.terms().size(); ++i) {
    const OddFieldTerm& s = a.terms()[i];
    const OddFieldTerm& t = b.terms()[i];
    if (s.coeff != t.coeff || s.theta_mask != t.theta_mask ||
        s.dtheta != t.dtheta)
      return false;
  }
  return true;
}

}  // namespace

bool homotopy_identity_check(int k) {
  if (k < 2) throw std::invalid_argument("level must be at least 2");
  auto chart = make_chart("U", {"x", "y"}, k);

  // bracket identity on R^{0|k}
  OddVectorField d1 = OddVectorField::d_theta(k, 1);
  OddVectorField v(k, {OddFieldTerm{Rational(1), 0b11, 2}});
  OddVectorField expect(k, {OddFieldTerm{Rational(1), 0b10, 2}});
  if (!same_field(field_bracket(d1, v), expect)) return false;

  // and its lift
  WormOperator lhs =
      graded_commutator(flat_lift(chart, d1), flat_lift(chart, v));
  if (!operators_equal_on_generators(chart, lhs,
                                     flat_lift(chart, expect)))
    return false;

  if (k != 2) return true;

  // total-degree identity: theta2 theta1 in ascending order carries a sign
  OddVectorField h1(k, {OddFieldTerm{Rational(1), 0b11, 2}});
  OddVectorField h2(k, {OddFieldTerm{Rational(-1), 0b11, 1}});
  WormOperator c1 = graded_commutator(d_op(chart, 1), flat_lift(chart, h1));
  WormOperator c2 = graded_commutator(d_op(chart, 2), flat_lift(chart, h2));
  WormOperator sum{
      [c1, c2](const Worm& w) { return c1(w) + c2(w); }, 0};

  GenImages deg;
  deg.chart = chart;
  deg.parity = 0;
  deg.coord_image.resize(chart->dim(), Worm(chart));
  deg.gen_image.resize(chart->dim());
  for (int i = 0; i < chart->dim(); ++i)
    for (uint8_t mask : generator_subsets(k))
      deg.gen_image[i][mask] =
          ScalarExpr::constant(__builtin_popcount(mask)) *
          Worm::generator(chart, Generator{mask, i});
  WormOperator total{
      [deg](const Worm& w) { return apply_derivation(deg, w); }, 0};
  return operators_equal_on_generators(chart, sum, total);
}

}  // namespace worms

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "worms/rational.hpp"

namespace worms {

class ScalarExpr;
using ExprPtr = std::shared_ptr<const ScalarExpr>;

enum class FuncKind : uint8_t { Sin, Cos, Exp, Log, Sqrt };

const char* func_name(FuncKind f);
std::optional<FuncKind> func_from_name(const std::string& name);

/// Multiplicative atom of a normalized expression: a coordinate variable,
/// a function application, or a non-monomial sum raised to a power
/// (the power itself lives in the enclosing monomial).
struct Atom {
  enum class Kind : uint8_t { Var, Func, SumPow };
  Kind kind = Kind::Var;
  std::string var;   // Kind::Var
  FuncKind func = FuncKind::Sin;  // Kind::Func
  ExprPtr arg;       // Func argument / SumPow base

  static Atom make_var(std::string name);
  static Atom make_func(FuncKind f, const ScalarExpr& a);
  static Atom make_sum_pow(const ScalarExpr& base);
};

int compare(const Atom& a, const Atom& b);

struct ExprMonomial {
  // sorted by atom, exponents nonzero
  std::vector<std::pair<Atom, int>> factors;
  bool empty() const { return factors.empty(); }
};

int compare(const ExprMonomial& a, const ExprMonomial& b);

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Symbolic smooth function of named variables, kept in a canonical
/// sum-of-monomials normal form with exact rational coefficients.
class ScalarExpr {
 public:
  using Term = std::pair<ExprMonomial, Rational>;

  ScalarExpr() = default;  // zero
  static ScalarExpr constant(Rational q);
  static ScalarExpr constant(long n) { return constant(Rational(n)); }
  static ScalarExpr variable(const std::string& name);
  static ScalarExpr apply(FuncKind f, const ScalarExpr& arg);
  static ScalarExpr from_terms(std::vector<Term> terms);  // normalizes

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Rational> as_constant() const;
  const std::vector<Term>& terms() const { return terms_; }

  ScalarExpr operator-() const;
  ScalarExpr pow(int e) const;

  ScalarExpr derivative(const std::string& var) const;
  double eval(const std::map<std::string, double>& point) const;
  ScalarExpr substitute(const std::map<std::string, ScalarExpr>& repl) const;

  bool has_function_atoms() const;
  void collect_variables(std::set<std::string>& out) const;
  std::set<std::string> variables() const;

  std::string str() const;

  friend ScalarExpr operator+(const ScalarExpr&, const ScalarExpr&);
  friend ScalarExpr operator-(const ScalarExpr&, const ScalarExpr&);
  friend ScalarExpr operator*(const ScalarExpr&, const ScalarExpr&);
  friend ScalarExpr operator/(const ScalarExpr&, const ScalarExpr&);
  friend ScalarExpr operator*(const Rational&, const ScalarExpr&);
  friend int compare(const ScalarExpr&, const ScalarExpr&);

 private:
  std::vector<Term> terms_;
};

inline bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
  return compare(a, b) == 0;
}
inline bool operator!=(const ScalarExpr& a, const ScalarExpr& b) {
  return compare(a, b) != 0;
}
inline bool operator<(const ScalarExpr& a, const ScalarExpr& b) {
  return compare(a, b) < 0;
}

ScalarExpr sin(const ScalarExpr& e);
ScalarExpr cos(const ScalarExpr& e);
ScalarExpr exp(const ScalarExpr& e);
ScalarExpr log(const ScalarExpr& e);
ScalarExpr sqrt(const ScalarExpr& e);

/// Equality test: exact normalization for polynomial/rational expressions;
/// expressions containing function atoms are certified probabilistically by
/// agreement at random regular points (documented behaviour).
bool expr_equal(const ScalarExpr& a, const ScalarExpr& b,
                unsigned seed = 12345, int points = 20,
                double rel_tol = 1e-9);

}  // namespace worms

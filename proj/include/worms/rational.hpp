#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace worms {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_str(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline double rational_to_double(const Rational& q) {
  return q.convert_to<double>();
}

/// Parses "p" or "p/q" with optional leading sign.
Rational parse_rational(const std::string& text);

inline Rational rational_pow(const Rational& q, int e) {
  if (e == 0) return Rational(1);
  if (q == 0 && e < 0) throw std::domain_error("division by zero");
  Rational base = e > 0 ? q : Rational(1) / q;
  int n = e > 0 ? e : -e;
  Rational out(1);
  while (n > 0) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

}  // namespace worms

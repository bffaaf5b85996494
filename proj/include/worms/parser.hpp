#pragma once

#include <stdexcept>
#include <string>

#include "worms/lifts.hpp"

namespace worms {

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
};

/// Infix grammar with + - * / ^, parentheses, function calls (sin, cos,
/// exp, log, sqrt), integer and rational literals, bare coordinates and
/// generators d{1}x, d{1,2}x. Function arguments may involve even
/// generators, which are absorbed into the coefficient as variables.
Worm parse_worm(const std::string& text, const ChartPtr& chart);

/// Same grammar without generators; every identifier is a variable.
ScalarExpr parse_scalar(const std::string& text);

/// Inverse of parse_worm up to normalization: parse(print(w)) == w.
std::string print_worm(const Worm& w);

/// Vector fields on R^{0|k}: sums of products of a rational coefficient,
/// theta factors t1..tk in any order, and one derivative factor Da last.
OddVectorField parse_field(const std::string& text, int level);

}  // namespace worms

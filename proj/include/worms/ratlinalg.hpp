#pragma once

#include <vector>

#include "worms/rational.hpp"

namespace worms {

/// Dense exact rational matrix, row major.
struct RatMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<Rational> data;

  RatMatrix() = default;
  RatMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c) {}

  Rational& at(size_t r, size_t c) { return data[r * cols + c]; }
  const Rational& at(size_t r, size_t c) const { return data[r * cols + c]; }
};

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<size_t> rref(RatMatrix& m);

size_t rank(RatMatrix m);

/// Basis of the right nullspace, one column vector per basis element.
std::vector<std::vector<Rational>> nullspace(RatMatrix m);

}  // namespace worms

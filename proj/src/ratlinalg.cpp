#include "worms/ratlinalg.hpp"

#include <algorithm>

namespace worms {

std::vector<size_t> rref(RatMatrix& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t piv = row;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != row)
      for (size_t c = 0; c < m.cols; ++c)
        std::swap(m.at(piv, c), m.at(row, c));
    Rational inv = Rational(1) / m.at(row, col);
    for (size_t c = col; c < m.cols; ++c) m.at(row, c) *= inv;
    for (size_t r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rational f = m.at(r, col);
      for (size_t c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

size_t rank(RatMatrix m) { return rref(m).size(); }

std::vector<std::vector<Rational>> nullspace(RatMatrix m) {
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (size_t freec = 0; freec < m.cols; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<Rational> v(m.cols);
    v[freec] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -m.at(i, freec);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace worms

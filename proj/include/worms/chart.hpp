#pragma once

#include <memory>
#include <string>
#include <vector>

#include "worms/scalar_expr.hpp"

namespace worms {

/// A coordinate chart together with the worm level k.
struct Chart {
  std::string name;
  std::vector<std::string> coords;
  int level = 0;  // number of anticommuting differentials, 0 <= k <= 8

  int dim() const { return static_cast<int>(coords.size()); }
  int coord_index(const std::string& c) const;
  ScalarExpr coord_expr(int i) const { return ScalarExpr::variable(coords.at(i)); }
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::string name, std::vector<std::string> coords,
                    int level);

bool same_chart(const ChartPtr& a, const ChartPtr& b);

}  // namespace worms

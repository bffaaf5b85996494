#include "worms/chart.hpp"

#include <set>
#include <stdexcept>

namespace worms {

int Chart::coord_index(const std::string& c) const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == c) return static_cast<int>(i);
  throw std::invalid_argument("unknown coordinate name: " + c);
}

ChartPtr make_chart(std::string name, std::vector<std::string> coords,
                    int level) {
  if (level < 0 || level > 8)
    throw std::invalid_argument("worm level must be in [0, 8]");
  std::set<std::string> seen(coords.begin(), coords.end());
  if (seen.size() != coords.size())
    throw std::invalid_argument("coordinate names must be distinct");
  auto c = std::make_shared<Chart>();
  c->name = std::move(name);
  c->coords = std::move(coords);
  c->level = level;
  return c;
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->name == b->name && a->coords == b->coords && a->level == b->level;
}

}  // namespace worms

#pragma once

#include <string>

#include "worms/worm.hpp"

namespace worms {

/// Serialization shape:
/// {"terms": [{"coeff": "<expression>", "mono": [{"S": [1,2], "coord": "x",
/// "exp": 1}, ...]}, ...]}
std::string worm_to_json(const Worm& w, int indent = -1);
Worm worm_from_json(const std::string& text, const ChartPtr& chart);

}  // namespace worms

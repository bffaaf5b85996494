#include "worms/json_io.hpp"

#include "json.hpp"
#include "worms/parser.hpp"

namespace worms {

using nlohmann::json;

std::string worm_to_json(const Worm& w, int indent) {
  json terms = json::array();
  for (const auto& [mono, coeff] : w.terms()) {
    json jmono = json::array();
    for (const GenPower& gp : mono.factors) {
      json s = json::array();
      for (int a = 1; a <= 8; ++a)
        if (gp.gen.subset & (1u << (a - 1))) s.push_back(a);
      jmono.push_back({{"S", s},
                       {"coord", w.chart()->coords.at(gp.gen.coord)},
                       {"exp", gp.exp}});
    }
    terms.push_back({{"coeff", coeff.str()}, {"mono", jmono}});
  }
  return json{{"terms", terms}}.dump(indent);
}

Worm worm_from_json(const std::string& text, const ChartPtr& chart) {
  json j = json::parse(text);
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw std::invalid_argument("expected an object with a terms array");
  Worm out(chart);
  for (const json& jt : j["terms"]) {
    ScalarExpr coeff = parse_scalar(jt.at("coeff").get<std::string>());
    Worm term = Worm::scalar(chart, coeff);
    for (const json& jg : jt.at("mono")) {
      uint8_t mask = 0;
      for (const json& ja : jg.at("S")) {
        int a = ja.get<int>();
        if (a < 1 || a > chart->level)
          throw std::invalid_argument("generator index out of range");
        mask |= static_cast<uint8_t>(1u << (a - 1));
      }
      if (mask == 0) throw std::invalid_argument("empty generator subset");
      int ci = -1;
      std::string name = jg.at("coord").get<std::string>();
      for (int i = 0; i < chart->dim(); ++i)
        if (chart->coords[i] == name) ci = i;
      if (ci < 0) throw std::invalid_argument("unknown coordinate: " + name);
      int exp = jg.at("exp").get<int>();
      if (exp < 1) throw std::invalid_argument("exponent must be >= 1");
      Worm g = Worm::generator(chart, Generator{mask, ci});
      for (int e = 0; e < exp; ++e) term = term * g;
    }
    out = out + term;
  }
  return out;
}

}  // namespace worms

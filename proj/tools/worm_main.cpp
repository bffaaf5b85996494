#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "worms/berezin_integrate.hpp"
#include "worms/cohomology.hpp"
#include "worms/dgca.hpp"
#include "worms/json_io.hpp"
#include "worms/parser.hpp"
#include "worms/pullback.hpp"
#include "worms/riemann.hpp"
#include "worms/toml_lite.hpp"

using nlohmann::json;
using namespace worms;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

struct ChartFlags {
  std::string coords;
  int k = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--coords", coords, "comma-separated coordinate names")
        ->required();
    cmd->add_option("--k", k, "number of anticommuting differentials")
        ->check(CLI::Range(1, 8));
  }

  ChartPtr make() const {
    std::vector<std::string> names;
    for (const std::string& c : split(coords, ',')) {
      std::string t = trim(c);
      if (t.empty()) throw std::invalid_argument("empty coordinate name");
      names.push_back(t);
    }
    return make_chart("U", names, k);
  }
};

void emit_worm(const Worm& w, bool as_json) {
  if (as_json)
    std::cout << worm_to_json(w, 2) << "\n";
  else
    std::cout << print_worm(w) << "\n";
}

bool has_generator_vars(const Worm& w) {
  std::set<std::string> vars;
  for (const auto& [mono, coeff] : w.terms()) coeff.collect_variables(vars);
  for (const std::string& v : vars)
    if (v.find('{') != std::string::npos) return true;
  return false;
}

QuadratureConfig config_from_file(const std::string& path) {
  QuadratureConfig cfg;
  if (path.empty()) return cfg;
  TomlTable t = load_toml(path);
  if (toml_has(t, "method")) cfg.method = toml_get(t, "method").as_string();
  if (toml_has(t, "nodes"))
    cfg.nodes = static_cast<int>(toml_get(t, "nodes").as_int());
  if (toml_has(t, "radius")) cfg.radius = toml_get(t, "radius").as_double();
  if (toml_has(t, "tol")) cfg.tol = toml_get(t, "tol").as_double();
  if (toml_has(t, "workers"))
    cfg.workers = static_cast<int>(toml_get(t, "workers").as_int());
  return cfg;
}

MetricSpec metric_from_file(const std::string& path) {
  TomlTable t = load_toml(path);
  std::vector<std::string> names;
  for (const TomlValue& v : toml_get(t, "coords").as_array())
    names.push_back(v.as_string());
  MetricSpec m;
  m.chart = make_chart("U", names, 2);
  for (const TomlValue& row : toml_get(t, "g").as_array()) {
    m.g.emplace_back();
    for (const TomlValue& entry : row.as_array())
      m.g.back().push_back(parse_scalar(entry.as_string()));
  }
  validate_metric(m);
  return m;
}

LieAlgebraSpec algebra_from_file(const std::string& path) {
  TomlTable t = load_toml(path);
  LieAlgebraSpec g;
  g.dimension = static_cast<int>(toml_get(t, "dimension").as_int());
  for (const TomlValue& plane : toml_get(t, "c").as_array()) {
    g.c.emplace_back();
    for (const TomlValue& row : plane.as_array()) {
      g.c.back().emplace_back();
      for (const TomlValue& entry : row.as_array())
        g.c.back().back().push_back(parse_rational(entry.text));
    }
  }
  validate_algebra(g);
  return g;
}

ConnectionForm connection_from_file(const std::string& path) {
  TomlTable t = load_toml(path);
  std::vector<std::string> names;
  for (const TomlValue& v : toml_get(t, "coords").as_array())
    names.push_back(v.as_string());
  ConnectionForm A;
  A.chart = make_chart("U", names, 1);
  for (const TomlValue& row : toml_get(t, "a").as_array()) {
    A.a.emplace_back();
    for (const TomlValue& entry : row.as_array())
      A.a.back().push_back(parse_scalar(entry.as_string()));
  }
  return A;
}

ScalarExpr scalar_on_chart(const std::string& text, const ChartPtr& chart) {
  Worm w = parse_worm(text, chart);
  if (!w.terms().empty() &&
      !(w.terms().size() == 1 && w.terms()[0].first.empty()))
    throw std::invalid_argument("expected a scalar expression: " + text);
  return w.scalar_part();
}

int run(int argc, char** argv) {
  CLI::App app{
      "calculator for graded-commutative algebras with several "
      "anticommuting differentials"};
  app.require_subcommand(1);
  std::function<void()> action;

  // eval
  {
    auto* cmd = app.add_subcommand("eval", "parse and normalize an expression");
    auto chart = std::make_shared<ChartFlags>();
    auto expr = std::make_shared<std::string>();
    auto as_json = std::make_shared<bool>(false);
    chart->attach(cmd);
    cmd->add_option("--expr", *expr, "expression")->required();
    cmd->add_flag("--json", *as_json, "machine-readable output");
    cmd->callback([=, &action] {
      action = [=] { emit_worm(parse_worm(*expr, chart->make()), *as_json); };
    });
  }

  // d
  {
    auto* cmd = app.add_subcommand("d", "apply the a-th differential");
    auto chart = std::make_shared<ChartFlags>();
    auto expr = std::make_shared<std::string>();
    auto a = std::make_shared<int>(1);
    auto as_json = std::make_shared<bool>(false);
    chart->attach(cmd);
    cmd->add_option("--expr", *expr, "expression")->required();
    cmd->add_option("--a", *a, "differential index")->check(CLI::Range(1, 8));
    cmd->add_flag("--json", *as_json, "machine-readable output");
    cmd->callback([=, &action] {
      action = [=] {
        ChartPtr c = chart->make();
        if (*a > c->level)
          throw std::invalid_argument("differential index exceeds the level");
        Worm w = parse_worm(*expr, c);
        if (has_generator_vars(w))
          throw std::invalid_argument(
              "expression is not polynomial in the generators");
        emit_worm(d(*a, w), *as_json);
      };
    });
  }

  // lift
  {
    auto* cmd = app.add_subcommand(
        "lift", "apply the lift of a vector field on the odd parameter space");
    auto chart = std::make_shared<ChartFlags>();
    auto expr = std::make_shared<std::string>();
    auto field = std::make_shared<std::string>();
    auto as_json = std::make_shared<bool>(false);
    chart->attach(cmd);
    cmd->add_option("--expr", *expr, "expression")->required();
    cmd->add_option("--field", *field,
                    "field in theta variables, e.g. t1*t2*D1")
        ->required();
    cmd->add_flag("--json", *as_json, "machine-readable output");
    cmd->callback([=, &action] {
      action = [=] {
        ChartPtr c = chart->make();
        OddVectorField u = parse_field(*field, c->level);
        Worm w = parse_worm(*expr, c);
        if (has_generator_vars(w))
          throw std::invalid_argument(
              "expression is not polynomial in the generators");
        emit_worm(flat_lift(c, u)(w), *as_json);
      };
    });
  }

  // pullback
  {
    auto* cmd = app.add_subcommand(
        "pullback", "pull an expression back along a coordinate map");
    auto chart = std::make_shared<ChartFlags>();
    auto expr = std::make_shared<std::string>();
    auto map_text = std::make_shared<std::string>();
    auto as_json = std::make_shared<bool>(false);
    chart->attach(cmd);
    cmd->add_option("--map", *map_text,
                    "semicolon-separated assignments, e.g. \"u=x^2; v=x*y\"")
        ->required();
    cmd->add_option("--expr", *expr, "expression in the target coordinates")
        ->required();
    cmd->add_flag("--json", *as_json, "machine-readable output");
    cmd->callback([=, &action] {
      action = [=] {
        ChartPtr source = chart->make();
        SmoothMap phi;
        phi.source = source;
        std::vector<std::string> target_names;
        for (const std::string& part : split(*map_text, ';')) {
          std::string assign = trim(part);
          if (assign.empty()) continue;
          size_t eq = assign.find('=');
          if (eq == std::string::npos)
            throw std::invalid_argument("map entry needs the form name=expr");
          target_names.push_back(trim(assign.substr(0, eq)));
          phi.components.push_back(
              scalar_on_chart(assign.substr(eq + 1), source));
        }
        phi.target = make_chart("V", target_names, source->level);
        emit_worm(pullback(phi, parse_worm(*expr, phi.target)), *as_json);
      };
    });
  }

  // integrate
  {
    auto* cmd = app.add_subcommand(
        "integrate", "integrate over the even and odd variables");
    auto chart = std::make_shared<ChartFlags>();
    auto expr = std::make_shared<std::string>();
    auto config = std::make_shared<std::string>();
    auto as_json = std::make_shared<bool>(false);
    chart->attach(cmd);
    cmd->add_option("--expr", *expr, "integrand")->required();
    cmd->add_option("--config", *config, "quadrature settings file")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--json", *as_json, "machine-readable output");
    cmd->callback([=, &action] {
      action = [=] {
        PseudoWorm p = PseudoWorm::from_worm(parse_worm(*expr, chart->make()));
        IntegrationResult r = integrate(p, config_from_file(*config));
        if (*as_json) {
          json out{{"value", r.value},
                   {"est_error", r.est_error},
                   {"nodes", r.nodes}};
          std::cout << out.dump(2) << "\n";
        } else {
          std::cout << "value = " << r.value << "\n"
                    << "est_error = " << r.est_error << "\n"
                    << "nodes = " << r.nodes << "\n";
        }
      };
    });
  }

  // riemann
  {
    auto* cmd = app.add_subcommand(
        "riemann", "connection and curvature components of a metric");
    auto metric = std::make_shared<std::string>();
    auto as_json = std::make_shared<bool>(false);
    cmd->add_option("--metric", *metric, "metric file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_flag("--json", *as_json, "machine-readable output");
    cmd->callback([=, &action] {
      action = [=] {
        MetricSpec m = metric_from_file(*metric);
        int n = m.chart->dim();
        Worm w = d1d2_gamma(m);
        TensorArray gamma = extract_christoffel(w, m);
        TensorArray riem = extract_riemann(critical_substitute(w, m), m);
        json jg = json::array(), jr = json::array();
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              const ScalarExpr& e = gamma.at({i, j, k});
              if (e.is_zero()) continue;
              jg.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1},
                            {"expr", e.str()}});
            }
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l) {
                const ScalarExpr& e = riem.at({i, j, k, l});
                if (e.is_zero()) continue;
                jr.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1},
                              {"l", l + 1}, {"expr", e.str()}});
              }
        if (*as_json) {
          std::cout << json{{"christoffel", jg}, {"riemann", jr}}.dump(2)
                    << "\n";
        } else {
          for (const json& e : jg)
            std::cout << "Gamma[" << e["i"] << "][" << e["j"] << "]["
                      << e["k"] << "] = " << e["expr"].get<std::string>()
                      << "\n";
          for (const json& e : jr)
            std::cout << "R[" << e["i"] << "][" << e["j"] << "][" << e["k"]
                      << "][" << e["l"]
                      << "] = " << e["expr"].get<std::string>() << "\n";
        }
      };
    });
  }

  // cohomology
  {
    auto* cmd = app.add_subcommand(
        "cohomology", "per-weight kernel-modulo-image dimensions");
    auto k = std::make_shared<int>(1);
    auto n = std::make_shared<int>(1);
    auto a = std::make_shared<int>(1);
    auto weights = std::make_shared<std::string>("0..5");
    auto as_json = std::make_shared<bool>(false);
    cmd->add_option("--k", *k, "number of differentials")
        ->required()
        ->check(CLI::Range(1, 8));
    cmd->add_option("--n", *n, "number of coordinates")
        ->required()
        ->check(CLI::Range(1, 8));
    cmd->add_option("--a", *a, "differential index")->check(CLI::Range(1, 8));
    cmd->add_option("--weights", *weights, "weight range lo..hi");
    cmd->add_flag("--json", *as_json, "machine-readable output");
    cmd->callback([=, &action] {
      action = [=] {
        size_t dots = weights->find("..");
        if (dots == std::string::npos)
          throw std::invalid_argument("weight range must look like 0..5");
        int lo = std::stoi(weights->substr(0, dots));
        int hi = std::stoi(weights->substr(dots + 2));
        if (lo < 0 || hi < lo)
          throw std::invalid_argument("bad weight range");
        if (*a > *k)
          throw std::invalid_argument("differential index exceeds the level");
        std::vector<std::string> names;
        for (int i = 1; i <= *n; ++i) names.push_back("x" + std::to_string(i));
        ChartPtr chart = make_chart("U", names, *k);
        std::vector<int> dims = cohomology_dims(chart, *a, hi);
        std::vector<int> slice(dims.begin() + lo, dims.begin() + hi + 1);
        if (*as_json) {
          json out{{"k", *k}, {"n", *n}, {"a", *a},
                   {"weights", {{"lo", lo}, {"hi", hi}}},
                   {"betti", slice}};
          std::cout << out.dump(2) << "\n";
        } else {
          std::cout << "[";
          for (size_t i = 0; i < slice.size(); ++i)
            std::cout << (i ? "," : "") << slice[i];
          std::cout << "]\n";
        }
      };
    });
  }

  // dgca
  {
    auto* cmd = app.add_subcommand(
        "dgca", "differential on the dual of a Lie algebra, flatness checks");
    auto algebra = std::make_shared<std::string>();
    auto connection = std::make_shared<std::string>();
    auto as_json = std::make_shared<bool>(false);
    cmd->add_option("--algebra", *algebra, "structure constants file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--connection", *connection, "connection form file")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--json", *as_json, "machine-readable output");
    cmd->callback([=, &action] {
      action = [=] {
        LieAlgebraSpec g = algebra_from_file(*algebra);
        bool sq = ce_square_zero(g);
        json out{{"dimension", g.dimension}, {"square_zero", sq}};
        if (!connection->empty()) {
          ConnectionForm A = connection_from_file(*connection);
          std::vector<Worm> res = mc_residual(g, A);
          bool flat = true;
          json jres = json::array();
          for (const Worm& f : res) {
            if (!f.is_zero()) flat = false;
            jres.push_back(print_worm(f));
          }
          out["residual"] = jres;
          out["flat"] = flat;
          out["morphism"] = dgca_morphism_check(g, A);
        }
        if (*as_json) {
          std::cout << out.dump(2) << "\n";
        } else {
          std::cout << "square_zero = " << (sq ? "true" : "false") << "\n";
          if (out.contains("flat")) {
            std::cout << "flat = " << (out["flat"].get<bool>() ? "true" : "false")
                      << "\n"
                      << "morphism = "
                      << (out["morphism"].get<bool>() ? "true" : "false")
                      << "\n";
            for (size_t i = 0; i < out["residual"].size(); ++i)
              std::cout << "F[" << i + 1
                        << "] = " << out["residual"][i].get<std::string>()
                        << "\n";
          }
        }
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    action();
  } catch (const IntegrationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

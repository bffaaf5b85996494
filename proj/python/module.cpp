#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "worms/berezin_integrate.hpp"
#include "worms/cohomology.hpp"
#include "worms/json_io.hpp"
#include "worms/parser.hpp"

namespace py = pybind11;
using namespace worms;

PYBIND11_MODULE(_wormalg, m) {
  m.doc() =
      "graded-commutative algebra with several anticommuting differentials";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  struct PyChart {
    ChartPtr ptr;
  };
  py::class_<PyChart>(m, "Chart")
      .def_property_readonly("coords",
                             [](const PyChart& c) { return c.ptr->coords; })
      .def_property_readonly("level",
                             [](const PyChart& c) { return c.ptr->level; })
      .def("__repr__", [](const PyChart& c) {
        std::string s = "Chart(coords=[";
        for (size_t i = 0; i < c.ptr->coords.size(); ++i)
          s += (i ? ", " : "") + c.ptr->coords[i];
        return s + "], k=" + std::to_string(c.ptr->level) + ")";
      });

  m.def(
      "make_chart",
      [](const std::vector<std::string>& coords, int k) {
        return PyChart{make_chart("U", coords, k)};
      },
      py::arg("coords"), py::arg("k"));

  py::class_<Worm>(m, "Worm")
      .def("__str__", &print_worm)
      .def("__repr__", &print_worm)
      .def("__add__", [](const Worm& a, const Worm& b) { return a + b; })
      .def("__sub__", [](const Worm& a, const Worm& b) { return a - b; })
      .def("__mul__", [](const Worm& a, const Worm& b) { return a * b; })
      .def("__neg__", [](const Worm& a) { return -a; })
      .def("__eq__", [](const Worm& a, const Worm& b) { return a == b; })
      .def("is_zero", &Worm::is_zero)
      .def("to_json", [](const Worm& w) { return worm_to_json(w, -1); });

  m.def(
      "parse",
      [](const std::string& text, const PyChart& chart) {
        return parse_worm(text, chart.ptr);
      },
      py::arg("text"), py::arg("chart"));
  m.def(
      "from_json",
      [](const std::string& text, const PyChart& chart) {
        return worm_from_json(text, chart.ptr);
      },
      py::arg("text"), py::arg("chart"));
  m.def(
      "d", [](int a, const Worm& w) { return d(a, w); }, py::arg("a"),
      py::arg("w"));

  m.def(
      "integrate",
      [](const std::string& expr, const PyChart& chart,
         const std::string& method, int nodes, double tol, int workers) {
        QuadratureConfig cfg;
        cfg.method = method;
        cfg.nodes = nodes;
        cfg.tol = tol;
        cfg.workers = workers;
        IntegrationResult r =
            integrate(PseudoWorm::from_worm(parse_worm(expr, chart.ptr)), cfg);
        return py::dict(py::arg("value") = r.value,
                        py::arg("est_error") = r.est_error,
                        py::arg("nodes") = r.nodes);
      },
      py::arg("expr"), py::arg("chart"), py::arg("method") = "gauss-hermite",
      py::arg("nodes") = 40, py::arg("tol") = 1e-6, py::arg("workers") = 1);

  m.def(
      "cohomology_dims",
      [](int k, int n, int a, int max_weight) {
        std::vector<std::string> names;
        for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
        return cohomology_dims(make_chart("U", names, k), a, max_weight);
      },
      py::arg("k"), py::arg("n"), py::arg("a") = 1, py::arg("max_weight") = 5);
}

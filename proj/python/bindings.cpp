#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tmdyn/approximator.hpp"
#include "tmdyn/exhaustive.hpp"
#include "tmdyn/graph_analysis.hpp"
#include "tmdyn/report.hpp"
#include "tmdyn/sft.hpp"

namespace py = pybind11;
using namespace tmdyn;

namespace {

Limits make_limits(std::uint64_t nodes, double seconds) {
  Limits l;
  l.nodes = nodes;
  l.seconds = seconds;
  return l;
}

std::pair<std::int64_t, std::int64_t> frac(const Rational& r) { return {r.num(), r.den()}; }

}  // namespace

PYBIND11_MODULE(_tmdyn, m) {
  m.doc() = "Certified speed and entropy bounds for one-tape Turing machines";
  m.attr("__version__") = tool_version();

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<TuringMachine>(m, "Machine")
      .def_static("parse", [](const std::string& text) { return parse_machine(text); })
      .def_static("load", &load_machine)
      .def_property_readonly("states", &TuringMachine::state_names)
      .def_property_readonly("symbols", &TuringMachine::symbol_names)
      .def_property_readonly("has_stay_moves", &TuringMachine::has_stay_moves)
      .def("digest", [](const TuringMachine& tm) { return digest(tm); })
      .def("serialize", [](const TuringMachine& tm) { return serialize(tm); })
      .def("mirror", [](const TuringMachine& tm) { return mirror(tm); })
      .def("__eq__", [](const TuringMachine& a, const TuringMachine& b) { return a == b; });

  m.def("speed_upper_raw", [](const TuringMachine& tm, std::size_t n, std::uint64_t nodes, double seconds) {
    Budget b(make_limits(nodes, seconds));
    return frac(speed_upper(tm, n, b));
  });
  m.def("entropy_upper", [](const TuringMachine& tm, std::size_t n, std::uint64_t nodes, double seconds) {
    Budget b(make_limits(nodes, seconds));
    return entropy_upper(tm, n, b);
  });
  m.def("speed_lower_raw", [](const TuringMachine& tm, std::size_t k, std::uint64_t nodes, double seconds) {
    Budget b(make_limits(nodes, seconds));
    return frac(speed_lower(tm, k, b).value);
  });
  m.def("entropy_lower", [](const TuringMachine& tm, std::size_t k, double delta, std::uint64_t nodes,
                            double seconds) {
    Budget b(make_limits(nodes, seconds));
    return entropy_lower(tm, k, delta, b).value;
  });
  m.def("crossing_graph_json", [](const TuringMachine& tm, std::size_t k, std::uint64_t nodes, double seconds) {
    Budget b(make_limits(nodes, seconds));
    return dump(to_json(tm, build_graph(tm, k, b)));
  });
  m.def("bk_graph", [](const TuringMachine& tm, std::size_t k, std::uint64_t nodes, double seconds) {
    Budget b(make_limits(nodes, seconds));
    const auto sft = build_bk(tm, k, b);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : sft.edges) edges.emplace_back(e.from, e.to);
    return std::make_pair(sft.vertices.size(), edges);
  });
  m.def("spectral_enclosure", [](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                 double delta) {
    const auto e = spectral_enclosure(n, edges, delta);
    return std::make_pair(e.lo, e.hi);
  });
  m.def("approximate_json", [](const TuringMachine& tm, const std::string& quantity, double eps,
                               std::uint64_t nodes, double seconds, std::size_t max_n, std::size_t max_k) {
    ApproximatorOptions o;
    o.limits = make_limits(nodes, seconds);
    o.max_n = max_n;
    o.max_k = max_k;
    IntervalResult r;
    if (quantity == "speed") r = approximate_speed(tm, eps, o);
    else if (quantity == "entropy") r = approximate_entropy(tm, eps, o);
    else throw std::invalid_argument("quantity must be 'speed' or 'entropy'");
    return dump(to_json(tm, r, false));
  });
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpbetti/critical.hpp"
#include "mpbetti/errors.hpp"
#include "mpbetti/io.hpp"

namespace py = pybind11;
using namespace mpb;

namespace {

int top_degree(const FiltrationDocument& d) { return std::max(0, d.filtration.complex().top_dim()); }

py::tuple grade_tuple(const GradeVector& g) {
  py::tuple t(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) t[i] = g[i];
  return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multigraded Betti tables of one-critical multifiltrations";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      PyErr_SetString(PyExc_ValueError, e.line() ? ("line " + std::to_string(e.line()) + ": " + e.what()).c_str()
                                                 : e.what());
    } catch (const ContractError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const InvariantError& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  py::class_<FiltrationDocument>(m, "Document")
      .def_property_readonly("parameters", [](const FiltrationDocument& d) { return d.filtration.parameters(); })
      .def_property_readonly("modulus", [](const FiltrationDocument& d) { return d.filtration.complex().field().modulus(); })
      .def_property_readonly("cells", [](const FiltrationDocument& d) { return d.filtration.complex().size(); })
      .def_property_readonly("seed", [](const FiltrationDocument& d) { return d.seed; })
      .def_property_readonly("hash", [](const FiltrationDocument& d) { return fixture_hash(d); })
      .def("text", [](const FiltrationDocument& d) { return print_document(d); })
      .def("__eq__", [](const FiltrationDocument& a, const FiltrationDocument& b) { return structurally_equal(a, b); });

  m.def("parse", [](const std::string& text) { return parse_document(text); }, py::arg("text"));
  m.def("load", &load_document, py::arg("path"));

  m.def(
      "generate",
      [](std::uint64_t seed, std::size_t vertices, std::size_t parameters, int top_dim, std::vector<double> fill,
         int grade_max, std::uint32_t modulus) {
        GeneratorParams g;
        g.seed = seed;
        g.vertices = vertices;
        g.parameters = parameters;
        g.top_dim = top_dim;
        g.fill = std::move(fill);
        g.grade_max = grade_max;
        g.modulus = modulus;
        return generate_random(g);
      },
      py::arg("seed"), py::arg("vertices") = 8, py::arg("parameters") = 2, py::arg("top_dim") = 2,
      py::arg("fill") = std::vector<double>{0.5, 0.3}, py::arg("grade_max") = 3, py::arg("modulus") = 2);

  m.def(
      "betti",
      [](const FiltrationDocument& d, std::optional<int> qmax) {
        BettiTable t = betti_tables(d.filtration, qmax.value_or(top_degree(d)));
        py::dict out;
        for (const auto& [key, values] : t.entries) out[py::make_tuple(key.first, grade_tuple(key.second))] = values;
        return out;
      },
      py::arg("doc"), py::arg("qmax") = py::none());

  m.def(
      "betti_csv",
      [](const FiltrationDocument& d, std::optional<int> qmax) {
        return betti_csv(betti_tables(d.filtration, qmax.value_or(top_degree(d))));
      },
      py::arg("doc"), py::arg("qmax") = py::none());

  m.def(
      "homology",
      [](const FiltrationDocument& d, const std::vector<int>& grade) {
        GradeVector u(grade.size());
        for (std::size_t i = 0; i < grade.size(); ++i) u[i] = grade[i];
        if (u.size() != d.filtration.parameters()) throw ContractError("grade has the wrong number of coordinates");
        CellularChains c = cellular_chains(d.filtration.complex(), d.filtration.sublevel(u));
        std::vector<std::size_t> dims;
        for (int q = 0; q <= top_degree(d); ++q) dims.push_back(c.chains.homology_dim(q));
        return dims;
      },
      py::arg("doc"), py::arg("grade"));

  m.def(
      "barcode",
      [](const FiltrationDocument& d) {
        std::vector<std::tuple<int, int, std::optional<int>>> out;
        for (const auto& b : barcode_1param(d.filtration, top_degree(d))) out.emplace_back(b.degree, b.birth, b.death);
        return out;
      },
      py::arg("doc"));

  m.def(
      "verify_json",
      [](const FiltrationDocument& d, const std::string& theorem, bool greedy, std::optional<int> qmax) {
        DiscreteVectorField v = greedy ? build_matching(d.filtration) : DiscreteVectorField{};
        int top = qmax.value_or(top_degree(d));
        SupportReport r;
        if (theorem == "support")
          r = verify_support_theorem(d.filtration, v, top);
        else if (theorem == "bounds")
          r = verify_bifiltration_bounds(d.filtration, v, top);
        else
          throw ContractError("theorem must be 'support' or 'bounds'");
        r.seed = d.seed;
        return report_json(r);
      },
      py::arg("doc"), py::arg("theorem") = "support", py::arg("greedy") = true, py::arg("qmax") = py::none());
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinmod/cli.hpp"
#include "spinmod/dualgraph.hpp"
#include "spinmod/enriched.hpp"
#include "spinmod/errors.hpp"
#include "spinmod/localalgebra.hpp"
#include "spinmod/scalars.hpp"
#include "spinmod/spinenum.hpp"

namespace py = pybind11;
using namespace spinmod;

namespace {

py::object to_python(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::tuple ext_pair(const Fq2Elem& x) { return py::make_tuple(x.re().value(), x.im().value()); }

std::vector<FqElem> to_field(const PrimeField& field, const std::vector<std::int64_t>& values) {
  std::vector<FqElem> out;
  for (auto v : values) out.push_back(field(v));
  return out;
}

}  // namespace

PYBIND11_MODULE(spinmod, m) {
  m.doc() = "Spin curves on nodal curves: supports, local models and enriched strata";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
  m.attr("SCHEMA") = kSchemaVersion;

  m.def("is_square", [](std::int64_t a, std::uint64_t q) { return is_square(PrimeField(q)(a)); },
        py::arg("a"), py::arg("q"));
  m.def(
      "sqrt_in_ext",
      [](std::int64_t a, std::uint64_t q) {
        const auto roots = sqrt_in_ext(PrimeField(q)(a));
        return py::make_tuple(ext_pair(roots[0]), ext_pair(roots[1]));
      },
      py::arg("a"), py::arg("q"), "Both square roots of a in F_{q^2} as (re, im) pairs.");

  py::class_<DualGraph>(m, "DualGraph")
      .def_static("from_json",
                  [](const std::string& s) {
                    auto j = nlohmann::json::parse(s, nullptr, false);
                    if (j.is_discarded()) throw InputError("malformed JSON curve");
                    return DualGraph::from_json(j);
                  })
      .def_static("two_component", &DualGraph::two_component, py::arg("g1"), py::arg("g2"), py::arg("delta"))
      .def_property_readonly("vertex_count", &DualGraph::vertex_count)
      .def_property_readonly("edge_count", &DualGraph::edge_count)
      .def_property_readonly("genus", &DualGraph::genus)
      .def("is_stable", &DualGraph::is_stable)
      .def("canonical_multidegree", &DualGraph::canonical_multidegree)
      .def("to_json", [](const DualGraph& g) { return to_python(g.to_json()); });

  m.def("valid_supports", &valid_supports, py::arg("graph"));
  m.def("root_count", &root_count, py::arg("graph"), py::arg("delta"));
  m.def("multiplicity", &multiplicity, py::arg("graph"), py::arg("delta"));
  m.def("singular_spin_count", &singular_spin_count, py::arg("graph"));
  m.def(
      "spin_table", [](const DualGraph& g, unsigned jobs) { return to_python(spin_table(g, jobs).to_json()); },
      py::arg("graph"), py::arg("jobs") = 1);

  m.def("dx_ideal", [](std::size_t delta) { return dx_ideal(delta).generator_strings(); }, py::arg("delta"));
  m.def("local_model", [](std::size_t delta) { return to_python(local_model_report(delta)); }, py::arg("delta"));
  m.def(
      "invariant_presentation_check",
      [](std::size_t delta, unsigned bound) { return to_python(invariant_presentation_check(delta, bound).to_json()); },
      py::arg("delta"), py::arg("degree_bound") = 6);
  m.def(
      "line_limit",
      [](const std::vector<std::int64_t>& direction, std::uint64_t q) {
        const PrimeField field(q);
        std::vector<std::vector<py::tuple>> out;
        for (const auto& p : line_limit(to_field(field, direction))) {
          std::vector<py::tuple> row;
          for (const auto& x : p) row.push_back(ext_pair(x));
          out.push_back(std::move(row));
        }
        return out;
      },
      py::arg("direction"), py::arg("q"));

  m.def(
      "enriched_count",
      [](int g1, int g2, std::size_t delta, std::uint64_t q) {
        const auto count = enriched_count(TwoComponentCurve(g1, g2, delta), q);
        py::dict strata;
        for (const auto& [s, n] : count.strata) strata[py::tuple(py::cast(s))] = n;
        return py::make_tuple(strata, count.total);
      },
      py::arg("g1"), py::arg("g2"), py::arg("delta"), py::arg("q"));
  m.def(
      "chi_map",
      [](int g1, int g2, std::size_t delta, std::uint64_t q, const EdgeSet& support,
         const std::vector<std::int64_t>& direction, std::uint64_t j2, std::uint64_t signs) {
        const PrimeField field(q);
        const TwoComponentCurve c(g1, g2, delta);
        const auto p = chi_map({support, to_field(field, direction), j2, signs}, c, field);
        std::vector<py::tuple> coords;
        for (const auto& x : p.coordinates) coords.push_back(ext_pair(x));
        return py::make_tuple(p.xi_index, coords, p.incidence);
      },
      py::arg("g1"), py::arg("g2"), py::arg("delta"), py::arg("q"), py::arg("support"),
      py::arg("direction"), py::arg("j2") = 0, py::arg("signs") = 0);
  m.def(
      "verify_torsor_bijection",
      [](int g1, int g2, std::size_t delta, const EdgeSet& support, std::uint64_t q, unsigned jobs) {
        return to_python(verify_torsor_bijection(TwoComponentCurve(g1, g2, delta), support, q, jobs).to_json());
      },
      py::arg("g1"), py::arg("g2"), py::arg("delta"), py::arg("support"), py::arg("q"), py::arg("jobs") = 1);
  m.def(
      "stratification_report",
      [](int g1, int g2, std::size_t delta, std::optional<std::uint64_t> q) {
        return to_python(stratification_report(TwoComponentCurve(g1, g2, delta), q));
      },
      py::arg("g1"), py::arg("g2"), py::arg("delta"), py::arg("q") = py::none());
}

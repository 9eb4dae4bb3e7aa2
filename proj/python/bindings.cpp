// Python bindings. Structured results cross the boundary as JSON text; the
// package __init__ turns them into dicts.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "volterra/config.hpp"
#include "volterra/criteria.hpp"
#include "volterra/operators.hpp"
#include "volterra/verify.hpp"
#include "volterra/weights.hpp"

namespace py = pybind11;
using namespace volterra;
using nlohmann::json;

namespace {

RunConfig config_from_text(const std::string& text) {
  RunConfig c = text.empty() ? RunConfig{} : config_from_json(json::parse(text));
  c.validate();
  return c;
}

std::vector<cplx> coeffs_of(const TruncatedSeries& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Criteria and norm estimates for Volterra-type operators on weighted spaces";

  py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

  py::class_<RadialWeight>(m, "Weight")
      .def(py::init(&make_weight), py::arg("spec"))
      .def("__call__", &RadialWeight::operator(), py::arg("r"))
      .def_property_readonly("spec", &RadialWeight::spec)
      .def_property_readonly("typical", &RadialWeight::typical)
      .def_property_readonly("is_analytic", &RadialWeight::is_analytic)
      .def_property_readonly("quasi_normal", &RadialWeight::quasi_normal_whitelisted)
      .def("property_u", [](const RadialWeight& w, int n_max) { return check_property_U(w, n_max).holds(); },
           py::arg("n_max") = 24)
      .def("property_l", [](const RadialWeight& w, int n_max) { return check_property_L(w, n_max).holds(); },
           py::arg("n_max") = 40)
      .def("is_normal", [](const RadialWeight& w) { return is_normal(w); })
      .def("__repr__", [](const RadialWeight& w) { return "Weight('" + w.spec() + "')"; });

  py::class_<SymbolSpec>(m, "Symbol")
      .def(py::init([](const std::string& spec, std::size_t n) { return make_symbol(spec, n); }), py::arg("spec"),
           py::arg("n_coeffs") = kSymbolCoefficients)
      .def_property_readonly("name", &SymbolSpec::name)
      .def_property_readonly("univalent", &SymbolSpec::univalent)
      .def_property_readonly("coefficients", [](const SymbolSpec& g) { return coeffs_of(g.coeffs()); })
      .def("__call__", &SymbolSpec::value, py::arg("z"))
      .def("derivative", &SymbolSpec::derivative, py::arg("z"))
      .def("__repr__", [](const SymbolSpec& g) { return "Symbol('" + g.name() + "')"; });

  m.def(
      "apply_tg",
      [](const std::vector<cplx>& f, const SymbolSpec& g, std::size_t out_degree) {
        return coeffs_of(apply_Tg(TruncatedSeries(f), g, out_degree));
      },
      py::arg("f"), py::arg("g"), py::arg("out_degree"));
  m.def(
      "apply_sg",
      [](const std::vector<cplx>& f, const SymbolSpec& g, std::size_t out_degree) {
        return coeffs_of(apply_Sg(TruncatedSeries(f), g, out_degree));
      },
      py::arg("f"), py::arg("g"), py::arg("out_degree"));

  m.def(
      "weight_report_json",
      [](const std::string& spec, const std::vector<double>& radii, const std::string& config) {
        const RadialWeight w = make_weight(spec);
        const RunConfig c = config_from_text(config);
        py::gil_scoped_release release;
        return weight_report(w, radii, c).dump();
      },
      py::arg("spec"), py::arg("radii"), py::arg("config") = "");

  m.def(
      "boundedness_sup_json",
      [](const std::string& kind, const std::string& g, const std::string& nu, const std::string& mu,
         const std::string& config) {
        const RunConfig c = config_from_text(config);
        const IntegralKind k = parse_integral_kind(kind);
        const SymbolSpec sym = make_symbol(g);
        const RadialWeight wn = make_weight(nu), wm = make_weight(mu);
        py::gil_scoped_release release;
        return to_json(boundedness_sup(k, sym, wn, wm, c.grid, c.quad, c.jobs)).dump();
      },
      py::arg("kind"), py::arg("g"), py::arg("nu"), py::arg("mu"), py::arg("config") = "");

  m.def(
      "opnorm_lower",
      [](const std::string& op, const std::string& g, const std::string& nu, const std::string& mu,
         const std::string& domain, const std::string& codomain, const std::string& config) {
        RunConfig c = config_from_text(config);
        c.search.grid = c.grid;
        const SymbolSpec sym = make_symbol(g);
        const RadialWeight wn = make_weight(nu), wm = make_weight(mu);
        py::gil_scoped_release release;
        return opnorm_lower(parse_op_kind(op), sym, wn, wm, parse_space_kind(domain), parse_space_kind(codomain),
                            c.search, c.jobs)
            .lower;
      },
      py::arg("op"), py::arg("g"), py::arg("nu"), py::arg("mu"), py::arg("domain") = "hinf",
      py::arg("codomain") = "hinf", py::arg("config") = "");

  m.def(
      "run_case_json",
      [](const std::string& spec, const std::string& config, bool with_norm) {
        const CaseSpec cs = case_from_json(json::parse(spec));
        const RunConfig c = config_from_text(config);
        py::gil_scoped_release release;
        return emit_report(run_case(cs, c, with_norm), "json");
      },
      py::arg("case"), py::arg("config") = "", py::arg("with_norm") = true);

  m.def(
      "equivalence_matrix_json",
      [](const std::string& cases, const std::string& config) {
        std::vector<CaseSpec> list;
        for (const auto& j : json::parse(cases)) list.push_back(case_from_json(j));
        const RunConfig c = config_from_text(config);
        py::gil_scoped_release release;
        return emit_matrix(equivalence_matrix(list, c), "json");
      },
      py::arg("cases"), py::arg("config") = "");

  m.def("standard_sweep_json", [] {
    json out = json::array();
    for (const auto& c : standard_sweep()) out.push_back(to_json(c));
    return out.dump();
  });
}

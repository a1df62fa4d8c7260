#include <pybind11/pybind11.h>

#include "dp4kit/census.hpp"
#include "dp4kit/error.hpp"
#include "dp4kit/io.hpp"

namespace py = pybind11;
using namespace dp4kit;

namespace {

// Values cross the boundary as JSON documents with the same schema as the CLI.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) {
  return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

FieldSpec field(std::uint64_t p, int k) {
  if (p == 0) return FieldSpec::rationals();
  return k == 1 ? FieldSpec::prime(p) : FieldSpec::extension(p, k);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic for quartic del Pezzo surfaces and fibrations";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const nlohmann::json::exception& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.attr("SCHEMA") = kSchema;

  m.def("numerology", [](int h, int h11) { return to_py(numerology_to_json(numerology(h, h11))); },
        py::arg("h"), py::arg("h11") = 2);
  m.def("cases", [](int n) { return to_py(cases_to_json(n)); }, py::arg("n") = 0);
  m.def(
      "chi_via_koszul",
      [](int n) {
        const KoszulChi k = chi_via_koszul(n);
        return to_py({{"chi_omega1", k.chi_omega1}, {"chi_top", k.chi_top}, {"h2_omega1", k.h2_omega1}});
      },
      py::arg("n"));
  m.def("rr_quartic_count", &rr_quartic_count, py::arg("deg"), py::arg("genus"), py::arg("k") = 4);
  m.def("expected_dims", [] { return to_py(expected_dims_to_json()); });

  m.def(
      "lattice_summary",
      [] {
        Json ex = Json::array();
        for (const auto& e : exceptional_classes()) ex.push_back(to_string(e));
        return to_py({{"weyl_order", weyl_group().size()},
                      {"exceptional_classes", ex},
                      {"discriminant_group", discriminant_group(lambda_gram()).name()},
                      {"K_squared", pairing(canonical_class(), canonical_class())}});
      });
  m.def(
      "class_arith",
      [](const py::object& table, const std::string& expr) {
        const ClassReport r = k3_class_arith(gram_from_json(from_py(table)), expr);
        Json j{{"coefficients", r.coefficients}, {"self", r.self_intersection}, {"pairings", r.pairings}};
        if (r.genus) j["genus"] = *r.genus;
        return to_py(j);
      },
      py::arg("table"), py::arg("expr"));

  m.def(
      "classify", [](const py::object& pencil) { return to_py(verdict_to_json(classify_stability(pencil_from_json(from_py(pencil))))); },
      py::arg("pencil"));
  m.def(
      "lines",
      [](const py::object& pencil, int k) {
        Json out = Json::array();
        for (const auto& l : lines_on_surface(pencil_from_json(from_py(pencil)), k)) out.push_back(line_to_json(l));
        return to_py(out);
      },
      py::arg("pencil"), py::arg("k") = 1);
  m.def(
      "xi", [](const py::object& pencil) { return to_py(moduli_point_to_json(xi_of_pencil(pencil_from_json(from_py(pencil))))); },
      py::arg("pencil"));
  m.def(
      "invariants",
      [](const py::object& coeffs, std::uint64_t p) {
        const BinaryForm f = quintic_from_json(from_py(coeffs), field(p, 1));
        const InvariantVector v = invariants_quintic(f);
        return to_py({{"I4", element_to_json(v.I4)},
                      {"I8", element_to_json(v.I8)},
                      {"I12", element_to_json(v.I12)},
                      {"moduli", moduli_point_to_json(moduli_point(v))}});
      },
      py::arg("coeffs"), py::arg("p") = 0);

  m.def(
      "generate_model",
      [](int case_no, const std::string& parity, int n, std::uint64_t p, std::uint64_t seed, int k) {
        if (p == 0) throw ValidationError("models need a finite field");
        return to_py(model_to_json(generate_model(parse_case(case_no, parity, n), field(p, k), seed)));
      },
      py::arg("case"), py::arg("parity"), py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("k") = 1);
  m.def(
      "discriminant",
      [](const py::object& model) {
        const FibrationModel md = model_from_json(from_py(model));
        return to_py(discriminant_to_json(md, discriminant_profile(md)));
      },
      py::arg("model"));
  m.def(
      "fiber_point_count",
      [](const py::object& model, const py::object& t, int k, bool force) {
        const FibrationModel md = model_from_json(from_py(model));
        FieldElement t0 = FieldElement::one(md.field), t1 = FieldElement::one(md.field);
        if (py::isinstance<py::str>(t) && t.cast<std::string>() == "inf") {
          t1 = FieldElement::zero(md.field);
        } else {
          t0 = element_from_json(md.field, from_py(t));
        }
        return fiber_point_count(md, t0, t1, k, 0, force);
      },
      py::arg("model"), py::arg("t"), py::arg("k") = 1, py::arg("force") = false);
  m.def(
      "census",
      [](const py::object& model, int degree, int k, int threads, bool force, bool fibers, bool sections) {
        const FibrationModel md = model_from_json(from_py(model));
        CensusOptions o;
        o.degree = degree;
        o.k = k;
        o.threads = threads;
        o.force = force;
        o.fiber_counts = fibers;
        o.sections = sections;
        CensusReport r;
        {
          py::gil_scoped_release release;
          r = run_census(md, o);
        }
        return to_py(census_to_json(md, r, o, false));
      },
      py::arg("model"), py::arg("degree") = 0, py::arg("k") = 1, py::arg("threads") = 1, py::arg("force") = false,
      py::arg("fibers") = true, py::arg("sections") = true);
  m.def(
      "base_points",
      [](const py::object& quadrics, int kmax) {
        return to_py(base_points_to_json(base_points(quadrics_from_json(from_py(quadrics)), kmax)));
      },
      py::arg("quadrics"), py::arg("kmax") = 1);
  m.def(
      "figure1",
      [](const py::object& model, bool force) {
        const FibrationModel md = model_from_json(from_py(model));
        return to_py(figure1_to_json(md, figure1_d1_check(md, 0, force)));
      },
      py::arg("model"), py::arg("force") = false);
}

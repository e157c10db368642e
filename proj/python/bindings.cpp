#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "fuchsian/coding.hpp"
#include "fuchsian/dynamics.hpp"
#include "fuchsian/oracle.hpp"
#include "fuchsian/parry.hpp"
#include "fuchsian/verify.hpp"
#include "fuchsian/walker.hpp"

namespace py = pybind11;
using namespace fuchsian;

namespace {

Variant variant_of(const std::string& v) {
  if (v == "corrected") return Variant::corrected;
  if (v == "literal") return Variant::literal;
  throw py::value_error("variant must be 'corrected' or 'literal'");
}

std::vector<std::string> state_names(const Coding& c) {
  std::vector<std::string> out;
  for (const auto& st : c.states) out.push_back(state_string(*c.scheme, st));
  return out;
}

py::dict parry_dict(const Coding& c) {
  const auto d = parry(c);
  py::dict out;
  out["lambda"] = d.lambda;
  out["h"] = d.h;
  out["alpha"] = d.alpha;
  out["stationary"] = d.stationary;
  return out;
}

Eigen::VectorXd random_function(int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::VectorXd f(points);
  for (int x = 0; x < points; ++x) f[x] = u(rng);
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symmetric Markov coding of Fuchsian groups";

  py::register_exception<SchemeError>(m, "SchemeError", PyExc_ValueError);
  py::register_exception<ActionError>(m, "ActionError", PyExc_ValueError);
  py::register_exception<OracleError>(m, "OracleError", PyExc_RuntimeError);
  py::register_exception<ParryError>(m, "ParryError", PyExc_RuntimeError);

  py::class_<Scheme>(m, "Scheme")
      .def_readonly("name", &Scheme::name)
      .def_property_readonly("size", &Scheme::size)
      .def_property_readonly("labels",
                             [](const Scheme& s) {
                               std::vector<std::string> out;
                               for (const auto& side : s.sides) out.push_back(side.label);
                               return out;
                             })
      .def("inverse_label", [](const Scheme& s, const std::string& e) { return s.name_of(s.inv(s.label(e))); })
      .def("flower_relator", [](const Scheme& s, int corner) { return s.word_string(s.flower_relator(corner)); })
      .def("validate", [](const Scheme& s) { return validate_scheme(s).ok(); })
      .def("validation_report", [](const Scheme& s) { return validate_scheme(s).text(); })
      .def("to_json", &scheme_to_json)
      .def("__repr__", [](const Scheme& s) { return "<Scheme " + s.name + ">"; });

  m.def("catalog_names", &catalog_names);
  m.def("catalog_scheme", [](const std::string& name) { return catalog_scheme(name); });
  m.def("parse_scheme", [](const std::string& doc) { return parse_scheme(doc); });

  // The coding refers to its scheme, so the scheme outlives it.
  py::class_<Coding>(m, "Coding")
      .def(py::init([](const Scheme& s, const std::string& v) { return build_coding(s, variant_of(v)); }),
           py::arg("scheme"), py::arg("variant") = "corrected", py::keep_alive<1, 2>())
      .def_property_readonly("size", &Coding::size)
      .def_property_readonly("states", &state_names)
      .def_property_readonly("start", [](const Coding& c) { return std::vector<bool>(c.start); })
      .def_property_readonly("final", [](const Coding& c) { return std::vector<bool>(c.final); })
      .def_property_readonly("involution", [](const Coding& c) { return c.reversal; })
      .def_property_readonly("successors", [](const Coding& c) { return c.succ; })
      .def("path_counts", &path_counts, py::arg("n_max"))
      .def("kind_counts", &count_by_kind)
      .def("reversible", &check_reversibility)
      .def("strongly_connected", &strongly_connected)
      .def("period", &period)
      .def("positivity_index", [](const Coding& c) { return positivity_index(c); })
      .def("parry", &parry_dict)
      .def("to_json", &coding_to_json);

  m.def(
      "sphere_sizes", [](const std::string& group, int radius) { return Oracle(realize_group(group), radius).sphere_sizes(); },
      py::arg("group"), py::arg("radius"));
  m.def(
      "thickened_path",
      [](const std::string& group, const std::string& word, int radius) {
        Oracle o(realize_group(group), radius);
        return thickpath_json(o.scheme(), brute_thickened(o, {}, o.scheme().parse_word(word)));
      },
      py::arg("group"), py::arg("word"), py::arg("radius") = 6);

  m.def("action_names", &action_names);
  m.def(
      "simulate",
      [](const Scheme& s, const std::string& action, int n, std::uint64_t seed) {
        const Coding c = build_coding(s);
        Dynamics dy(c, parry(c), catalog_action(s, action));
        const auto rows = convergence_experiment(dy, random_function(dy.points(), seed), n);
        std::vector<py::dict> out;
        for (const auto& r : rows) {
          py::dict row;
          row["n"] = r.n;
          row["sup_error"] = r.sup_error;
          row["l1_error"] = r.l1_error;
          row["sphere_size"] = r.sphere_size;
          out.push_back(row);
        }
        return out;
      },
      py::arg("scheme"), py::arg("action"), py::arg("n"), py::arg("seed") = 1);
  m.def(
      "spherical_sum",
      [](const Scheme& s, const std::string& action, const Eigen::VectorXd& f, int n) {
        const Coding c = build_coding(s);
        Dynamics dy(c, parry(c), catalog_action(s, action));
        if (f.size() != dy.points()) throw py::value_error("f needs one value per point of the action");
        return Eigen::VectorXd(dy.spherical_sum(f, n));
      },
      py::arg("scheme"), py::arg("action"), py::arg("f"), py::arg("n"));

  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed) {
        const auto r = run_suite(name, seed);
        return py::make_tuple(r.pass, r.detail);
      },
      py::arg("name"), py::arg("seed") = 1);
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "foliatk/commands.hpp"
#include "foliatk/ipoisson.hpp"
#include "foliatk/parser.hpp"
#include "foliatk/scene.hpp"
#include "foliatk/submersion.hpp"

namespace py = pybind11;
using namespace foliatk;

namespace {

std::vector<Rational> rationals(const std::vector<std::string>& text) {
  std::vector<Rational> out;
  for (const auto& t : text) out.push_back(parse_point(t).at(0));
  return out;
}

std::vector<std::string> strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

py::dict certificate(const Certificate& c) {
  py::dict d;
  d["holds"] = c.claim_holds();
  d["cofactors"] = strings(c.cofactors);
  d["remainder"] = c.remainder.to_string();
  return d;
}

std::pair<int, std::string> run(const std::string& command, const Scene& scene, std::optional<std::string> point,
                                std::vector<std::string> candidates, std::optional<double> tol, std::optional<double> dt,
                                std::optional<double> t_end, std::optional<std::string> order) {
  CommandOptions opt;
  if (point) opt.point = parse_point(*point);
  opt.candidates = std::move(candidates);
  opt.tol = tol;
  opt.dt = dt;
  opt.t_end = t_end;
  if (order) opt.order = parse_order(*order);
  CommandResult r = run_command(command, scene, opt);
  return {r.exit_code(), r.report.dump(2)};
}

}  // namespace

PYBIND11_MODULE(_foliatk, m) {
  m.doc() = "Exact polynomial checks for singular Riemannian foliations";
  m.attr("__version__") = FOLIATK_VERSION;

  auto& error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<SceneError>(m, "SceneError", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());

  py::class_<VariableSet>(m, "VariableSet")
      .def(py::init([](std::vector<std::string> base) { return VariableSet(std::move(base)); }), py::arg("coordinates"))
      .def_static("cotangent", &VariableSet::cotangent, py::arg("coordinates"))
      .def_property_readonly("names", [](const VariableSet& v) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(v.name(i));
        return out;
      })
      .def_property_readonly("dimension", &VariableSet::dimension)
      .def("with_fiber", &VariableSet::with_fiber)
      .def("__eq__", &VariableSet::operator==)
      .def("__len__", &VariableSet::size);

  py::class_<Polynomial>(m, "Polynomial")
      .def(py::init([](const std::string& text, const VariableSet& vars) { return parse_expression(text, vars); }),
           py::arg("text"), py::arg("vars"))
      .def_property_readonly("vars", &Polynomial::vars)
      .def("__str__", &Polynomial::to_string)
      .def("__repr__", [](const Polynomial& p) { return "Polynomial('" + p.to_string() + "')"; })
      .def("__add__", [](const Polynomial& a, const Polynomial& b) { return a + b; })
      .def("__sub__", [](const Polynomial& a, const Polynomial& b) { return a - b; })
      .def("__mul__", [](const Polynomial& a, const Polynomial& b) { return a * b; })
      .def("__neg__", [](const Polynomial& a) { return -a; })
      .def("__pow__", [](const Polynomial& a, unsigned k) { return a.pow(k); })
      .def("__eq__", &Polynomial::operator==)
      .def("is_zero", &Polynomial::is_zero)
      .def("total_degree", &Polynomial::total_degree)
      .def("diff", py::overload_cast<std::string_view>(&Polynomial::diff, py::const_), py::arg("name"))
      .def("eval_exact",
           [](const Polynomial& p, const std::map<std::string, std::string>& point) {
             std::map<std::string, Rational> q;
             for (const auto& [k, v] : point) q[k] = parse_point(v).at(0);
             return to_string(p.eval(q));
           })
      .def("eval", [](const Polynomial& p, const std::map<std::string, double>& point) { return p.eval(point); });

  m.def("poisson_bracket", &canonical_poisson, py::arg("f"), py::arg("g"));
  m.def(
      "ideal_membership",
      [](const std::vector<Polynomial>& gens, const Polynomial& f, const std::string& order) {
        IdealPresentation I(f.vars(), gens, parse_order(order));
        return certificate(I.membership(f));
      },
      py::arg("generators"), py::arg("f"), py::arg("order") = "block");
  m.def(
      "groebner_basis",
      [](const std::vector<Polynomial>& gens, const VariableSet& vars, const std::string& order) {
        return strings(IdealPresentation(vars, gens, parse_order(order)).gb().basis());
      },
      py::arg("generators"), py::arg("vars"), py::arg("order") = "grevlex");

  py::class_<Scene>(m, "Scene")
      .def_readonly("name", &Scene::name)
      .def_readonly("chart", &Scene::chart)
      .def_readonly("cotangent", &Scene::cotangent)
      .def_readonly("notes", &Scene::notes)
      .def_property_readonly("candidates",
                             [](const Scene& s) {
                               std::vector<std::string> names;
                               for (const auto& [n, p] : s.candidates) names.push_back(n);
                               return names;
                             })
      .def("candidate", &Scene::candidate, py::arg("name"))
      .def("hamiltonian", [](const Scene& s) { return s.metric.hamiltonian(); })
      .def("lifted_ideal", [](const Scene& s) { return s.ideal_presentation().generators(); })
      .def(
          "fiber_dim",
          [](const Scene& s, const std::vector<std::string>& point) {
            return fiber_dim(s.foliation_module(), rationals(point));
          },
          py::arg("point"))
      .def(
          "tangent_dim",
          [](const Scene& s, const std::vector<std::string>& point) {
            return tangent_dim(s.foliation_module(), rationals(point));
          },
          py::arg("point"))
      .def("is_srf", [](const Scene& s) { return srf_check(s.foliation_module(), s.metric).passed; })
      .def("is_involutive", [](const Scene& s) { return involutivity_check(s.foliation_module()).passed; })
      .def("in_normalizer", [](const Scene& s, const Polynomial& f) {
        return normalizer_check(s.ideal_presentation(), f).passed;
      });

  m.def("load_scene", &load_scene, py::arg("path"));
  m.def("parse_scene", &parse_scene, py::arg("json_text"));
  m.def("command_names", &command_names);
  m.def("run_command", &run, py::arg("command"), py::arg("scene"), py::arg("point") = py::none(),
        py::arg("candidates") = std::vector<std::string>{}, py::arg("tol") = py::none(), py::arg("dt") = py::none(),
        py::arg("t_end") = py::none(), py::arg("order") = py::none(),
        "Returns (exit_code, report_json).");
}

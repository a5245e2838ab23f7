#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lrbac/cli.hpp"
#include "lrbac/eval.hpp"
#include "lrbac/role.hpp"
#include "lrbac/typing.hpp"

namespace py = pybind11;

namespace {

py::tuple cli(const std::vector<std::string>& args, const std::string& input) {
  std::ostringstream out, err;
  std::istringstream in(input);
  int code = lrbac::run_cli(args, out, err, in);
  return py::make_tuple(code, out.str(), err.str());
}

lrbac::SystemId system_of(const std::string& name) {
  auto s = lrbac::parse_system(name);
  if (!s) throw py::value_error("unknown system " + name);
  return *s;
}

std::string type_of(const std::string& src, const std::string& system, bool amp) {
  lrbac::Program p = lrbac::parse_program(src);
  lrbac::Term t = p.expanded_main();
  lrbac::SystemId sys = system_of(system);
  lrbac::Type ty = amp ? lrbac::synthesize_amp({}, lrbac::Role::bottom(), t, sys) : lrbac::synthesize(sys, {}, t);
  return lrbac::to_string(lrbac::canonical_type(ty));
}

py::dict eval(const std::string& src, const std::string& role, std::size_t fuel, bool amp) {
  lrbac::Program p = lrbac::parse_program(src);
  lrbac::EvalConfig cfg;
  cfg.context_role = lrbac::parse_role(role, p.role_aliases());
  cfg.fuel = fuel;
  cfg.amp_mode = amp;
  lrbac::Outcome o = lrbac::evaluate(cfg, p.expanded_main());
  py::dict d;
  d["status"] = lrbac::to_string(o.kind);
  d["term"] = lrbac::print_term(o.term);
  d["steps"] = o.steps;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Typing, evaluation and role proofs for the lrbac calculus";

  // Translators registered later are tried first, so the base goes first.
  auto base = py::register_exception<lrbac::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<lrbac::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<lrbac::TypeError>(m, "TypeError", base.ptr());

  m.def("run_cli", &cli, py::arg("args"), py::arg("stdin") = "",
        "Run the command line in-process; returns (exit code, stdout, stderr).");
  m.def(
      "dominates",
      [](const std::string& a, const std::string& b) { return lrbac::dominates(lrbac::parse_role(a), lrbac::parse_role(b)); },
      py::arg("r1"), py::arg("r2"));
  m.def(
      "equiv",
      [](const std::string& a, const std::string& b) { return lrbac::equiv(lrbac::parse_role(a), lrbac::parse_role(b)); },
      py::arg("r1"), py::arg("r2"));
  m.def(
      "canonical_role", [](const std::string& r) { return lrbac::canonical_string(lrbac::parse_role(r)); },
      py::arg("role"));
  m.def("type_of", &type_of, py::arg("source"), py::arg("system") = "sufficient", py::arg("amp") = false,
        "Type of the main term of a program.");
  m.def("evaluate", &eval, py::arg("source"), py::arg("role"), py::arg("fuel") = lrbac::default_fuel(),
        py::arg("amp") = false, "Evaluate the main term of a program under a context role.");
}

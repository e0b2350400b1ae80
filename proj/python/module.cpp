#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "guarded/approx.hpp"
#include "guarded/bisim.hpp"
#include "guarded/ccs.hpp"
#include "guarded/errors.hpp"
#include "guarded/functor_kit.hpp"
#include "guarded/glts.hpp"
#include "guarded/hml.hpp"

namespace py = pybind11;
using namespace guarded;

namespace {

struct Compiled {
  Glts glts;
  std::vector<std::pair<std::string, std::string>> roots;  // definition -> state
};

Compiled compile_ccs(const std::string& source, std::size_t state_limit) {
  auto prog = ccs::parse_program(source);
  std::vector<ccs::Process> roots;
  for (const auto& d : prog.defs) roots.push_back(d.process);
  auto sys = ccs::to_glts(roots, prog.names, state_limit);
  Compiled out{std::move(sys.glts), {}};
  for (std::size_t i = 0; i < prog.defs.size(); ++i)
    out.roots.emplace_back(prog.defs[i].name, out.glts.name(sys.roots[i]));
  return out;
}

std::vector<std::tuple<std::string, std::string, std::string>> transitions(const Glts& g) {
  std::vector<std::tuple<std::string, std::string, std::string>> out;
  for (const auto& t : g.transitions())
    out.emplace_back(g.name(t.source), g.name(t.label), g.name(t.target));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Guarded process semantics: systems, evaluation, bisimilarity, HML";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<LookupError>(m, "UnknownName", PyExc_KeyError);
  py::register_exception<LimitExceeded>(m, "LimitExceeded", PyExc_RuntimeError);

  py::class_<Glts>(m, "Glts")
      .def_property_readonly("states", &Glts::state_names)
      .def_property_readonly("actions", &Glts::action_names)
      .def_property_readonly("transitions", &transitions)
      .def("successors",
           [](const Glts& g, const std::string& x, const std::string& a) {
             std::vector<std::string> out;
             for (auto s : successors(g, g.state(x), g.action(a))) out.push_back(g.name(s));
             return out;
           })
      .def("to_text", &to_glts_text)
      .def("to_json", py::overload_cast<const Glts&>(&to_json))
      .def("__eq__", [](const Glts& a, const Glts& b) { return a == b; })
      .def("__repr__", [](const Glts& g) {
        return "<Glts " + std::to_string(g.num_states()) + " states, " +
               std::to_string(g.num_actions()) + " actions>";
      });

  py::class_<Compiled>(m, "CompiledCcs")
      .def_readonly("glts", &Compiled::glts)
      .def_property_readonly("roots", [](const Compiled& c) {
        py::dict d;
        for (const auto& [k, v] : c.roots) d[py::str(k)] = v;
        return d;
      });

  m.def("parse_glts", &parse_glts, py::arg("text"));
  m.def("glts_from_json", &glts_from_json, py::arg("text"));
  m.def("example_fig1", &example_fig1);
  m.def("compile_ccs", &compile_ccs, py::arg("source"), py::arg("state_limit") = 10000,
        "Compiles every definition of a .ccs source into one system.");
  m.def("print_ccs", [](const std::string& src) {
    ccs::NameTable names;
    return ccs::print(ccs::parse(src, names), names);
  });

  m.def(
      "eval",
      [](const Glts& g, const std::string& x, std::uint32_t depth) {
        return eval(g, g.state(x), depth).render(g);
      },
      py::arg("glts"), py::arg("state"), py::arg("depth"));

  m.def(
      "bisimilar",
      [](const Glts& g, const std::string& x, const std::string& y,
         std::optional<std::uint32_t> depth) {
        if (depth) return bisim_level(g, *depth).holds(g.state(x), g.state(y));
        return bisim_stable(g).rel.holds(g.state(x).value, g.state(y).value);
      },
      py::arg("glts"), py::arg("x"), py::arg("y"), py::arg("depth") = py::none());

  m.def("stable_level", [](const Glts& g) { return bisim_stable(g).level; });

  m.def(
      "bisim_classes",
      [](const Glts& g, std::uint32_t depth) {
        auto b = bisim_level(g, depth);
        std::vector<std::vector<std::string>> classes;
        std::vector<bool> seen(g.num_states(), false);
        for (auto x : g.states()) {
          if (seen[x.value]) continue;
          std::vector<std::string> cls;
          for (auto y : g.states())
            if (b.holds(x, y)) {
              seen[y.value] = true;
              cls.push_back(g.name(y));
            }
          classes.push_back(cls);
        }
        return classes;
      },
      py::arg("glts"), py::arg("depth"));

  m.def(
      "coincidence",
      [](const Glts& g, std::uint32_t depth) {
        auto r = coincidence(g, depth);
        py::dict d;
        d["holds"] = r.holds;
        if (r.counterexample)
          d["counterexample"] = py::make_tuple(g.name(r.counterexample->first),
                                               g.name(r.counterexample->second));
        else
          d["counterexample"] = py::none();
        return d;
      },
      py::arg("glts"), py::arg("depth"));

  m.def(
      "sat",
      [](const Glts& g, const std::string& x, const std::string& formula, std::uint32_t depth) {
        return hml::sat(g, g.state(x), hml::parse_formula(formula), depth);
      },
      py::arg("glts"), py::arg("state"), py::arg("formula"), py::arg("depth"));

  m.def(
      "distinguish",
      [](const Glts& g, const std::string& x, const std::string& y,
         std::uint32_t depth) -> std::optional<std::pair<std::string, bool>> {
        auto d = hml::distinguish(g, g.state(x), g.state(y), depth);
        if (!d) return std::nullopt;
        return std::pair{d->formula.to_string(), d->holds_at_first};
      },
      py::arg("glts"), py::arg("x"), py::arg("y"), py::arg("depth"),
      "Returns (formula, holds_at_x) or None.");

  m.def(
      "witness_count_total",
      [](std::uint32_t n) {
        std::vector<fk::FValue> all;
        for (std::uint32_t i = 0; i < n; ++i) all.push_back(fk::FValue::elem(i));
        auto u = fk::FValue::set(all);
        return fk::witness_count(fk::Functor::pfin(fk::Functor::id()),
                                 fk::Relation::total(n, n), u, u);
      },
      py::arg("n"),
      "Number of lifting witnesses relating the full n-element set to itself "
      "under the total relation.");
}

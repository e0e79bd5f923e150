// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// Python bindings. Values cross the boundary as strings in the format of their
// semiring.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semfo/error.h"
#include "semfo/eval.h"
#include "semfo/formula.h"
#include "semfo/interpretation.h"
#include "semfo/preservation.h"
#include "semfo/provenance.h"
#include "semfo/semiring.h"
#include "semfo/strategy.h"
#include "semfo/transform.h"

namespace py = pybind11;

namespace semfo {
namespace {

std::vector<Elem> elements(const Interpretation& pi, const std::vector<std::string>& names) {
  std::vector<Elem> out;
  for (const auto& n : names) out.push_back(pi.element(n));
  return out;
}

std::optional<Semiring> semiring_of(const std::optional<std::string>& id) {
  if (!id) return std::nullopt;
  return Semiring::from_id(*id);
}

std::string eval_text(const Interpretation& pi, const std::string& formula,
                      const std::map<std::string, std::string>& assignment) {
  std::map<std::string, Elem> a;
  for (const auto& [var, name] : assignment) a[var] = pi.element(name);
  return pi.semiring().format(eval(pi, parse(formula), a));
}

py::dict verdict_dict(const PreservationVerdict& v, const Semiring& s) {
  py::dict d;
  d["refuted"] = v.refuted;
  d["exhaustive"] = v.exhaustive;
  d["checked"] = v.checked;
  if (v.witness) {
    d["a"] = v.witness->a.to_string();
    d["b"] = v.witness->b.to_string();
    d["value_a"] = s.format(v.witness->value_a);
    d["value_b"] = s.format(v.witness->value_b);
  }
  return d;
}

}  // namespace
}  // namespace semfo

PYBIND11_MODULE(_core, m) {
  using namespace semfo;
  m.doc() = "Semiring semantics of first-order logic";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Semiring>(m, "Semiring")
      .def(py::init([](const std::string& id) { return Semiring::from_id(id); }), py::arg("id"))
      .def_property_readonly("id", &Semiring::id)
      .def("add", [](const Semiring& s, const std::string& a, const std::string& b) {
        return s.format(s.add(s.parse_value(a), s.parse_value(b)));
      })
      .def("mul", [](const Semiring& s, const std::string& a, const std::string& b) {
        return s.format(s.mul(s.parse_value(a), s.parse_value(b)));
      })
      .def("leq", [](const Semiring& s, const std::string& a, const std::string& b) {
        return s.leq(s.parse_value(a), s.parse_value(b));
      })
      .def_property_readonly("zero", [](const Semiring& s) { return s.format(s.zero()); })
      .def_property_readonly("one", [](const Semiring& s) { return s.format(s.one()); })
      .def("__repr__", [](const Semiring& s) { return "Semiring('" + s.id() + "')"; });

  m.def("render", [](const std::string& text) { return render(parse(text)); }, py::arg("formula"));
  m.def("free_vars", [](const std::string& text) { return free_vars(parse(text)); }, py::arg("formula"));
  m.def(
      "metrics",
      [](const std::string& text) {
        const FormulaMetrics k = metrics(parse(text));
        py::dict d;
        d["size"] = k.size;
        d["qr"] = k.qr;
        d["qr_forall"] = k.qr_forall;
        return d;
      },
      py::arg("formula"));
  m.def("fo_to_foneq", [](const std::string& t) { return render(fo_to_foneq(parse(t))); }, py::arg("formula"));
  m.def("foneq_to_fo", [](const std::string& t) { return render(foneq_to_fo(parse(t))); }, py::arg("formula"));
  m.def("psi_n", [](const std::string& t, std::size_t n) { return render(psi_n(parse(t), n)); }, py::arg("formula"),
        py::arg("n"));

  py::class_<Interpretation>(m, "Interpretation")
      .def(py::init([](const std::string& semiring, std::size_t n, const std::map<std::string, std::size_t>& rels) {
             Vocabulary v;
             for (const auto& [name, arity] : rels) v.add(name, arity);
             return Interpretation::over(Semiring::from_id(semiring), n, v);
           }),
           py::arg("semiring"), py::arg("size"), py::arg("relations"))
      .def_static(
          "load",
          [](const std::string& path, const std::optional<std::string>& s) {
            return Interpretation::load(path, semiring_of(s));
          },
          py::arg("path"), py::arg("semiring") = py::none())
      .def_static(
          "parse",
          [](const std::string& text, const std::optional<std::string>& s) {
            return Interpretation::parse(text, semiring_of(s));
          },
          py::arg("text"), py::arg("semiring") = py::none())
      .def_property_readonly("size", &Interpretation::size)
      .def_property_readonly("universe", &Interpretation::universe)
      .def_property_readonly("semiring", &Interpretation::semiring)
      .def(
          "set",
          [](Interpretation& pi, const std::string& rel, const std::vector<std::string>& args,
             const std::string& value, bool negated) {
            const Value v = pi.semiring().parse_value(value);
            if (negated) {
              pi.set_negated(rel, elements(pi, args), v);
            } else {
              pi.set_atom(rel, elements(pi, args), v);
            }
          },
          py::arg("relation"), py::arg("args"), py::arg("value"), py::arg("negated") = false)
      .def(
          "value",
          [](const Interpretation& pi, const std::string& rel, const std::vector<std::string>& args, bool negated) {
            return pi.semiring().format(pi.value(rel, negated, elements(pi, args)));
          },
          py::arg("relation"), py::arg("args"), py::arg("negated") = false)
      .def("restrict",
           [](const Interpretation& pi, const std::vector<std::string>& names) {
             return restrict(pi, elements(pi, names));
           })
      .def("to_string", &Interpretation::to_string)
      .def("__eq__", [](const Interpretation& a, const Interpretation& b) { return a == b; });

  m.def("eval", &eval_text, py::arg("interp"), py::arg("formula"),
        py::arg("assignment") = std::map<std::string, std::string>{});
  m.def(
      "strategy_count",
      [](const std::string& f, std::size_t n) { return GameTree(parse_sentence(f), n).strategy_count(); },
      py::arg("formula"), py::arg("n"));
  m.def(
      "optimal",
      [](const Interpretation& pi, const std::string& f) {
        const OptimalResult r = optimal(pi, parse_sentence(f));
        return py::make_tuple(pi.semiring().format(r.value), py::int_(py::str(r.tie_count.get_str())));
      },
      py::arg("interp"), py::arg("formula"));
  m.def(
      "canonical_polynomial",
      [](const std::string& f, std::size_t n, bool nat) {
        const PolyFlavor fl = nat ? PolyFlavor::kNat : PolyFlavor::kAbsorptive;
        const Semiring s = nat ? Semiring::nat_poly() : Semiring::abs_poly();
        return s.format(canonical_polynomial(parse(f), n, fl));
      },
      py::arg("formula"), py::arg("n"), py::arg("nat") = false);
  m.def(
      "check_preservation",
      [](const std::string& f, const std::string& semiring, const std::string& property, std::size_t max_size,
         const std::vector<std::string>& grid) {
        const Semiring s = Semiring::from_id(semiring);
        PreservationOptions o;
        o.max_size = max_size;
        for (const auto& g : grid) o.grid.push_back(s.parse_value(g));
        return verdict_dict(check_preservation(parse_sentence(f), s, parse_property(property), o), s);
      },
      py::arg("formula"), py::arg("semiring"), py::arg("property") = "extensions", py::arg("max_size") = 3,
      py::arg("grid") = std::vector<std::string>{});
  m.def("is_trivial_at", [](const std::string& f, std::size_t n) { return is_trivial_at(parse(f), n); },
        py::arg("formula"), py::arg("n"));
  m.def(
      "eventual_triviality", [](const std::string& f) { return to_string(is_eventually_trivial(parse(f)).verdict); },
      py::arg("formula"));
  m.def(
      "rewrite",
      [](const std::string& f, const std::string& mode, const std::string& semiring) {
        RewriteReport r = mode == "lattice" ? rewrite_sigma1_lattice(parse_sentence(f))
                                            : rewrite_sigma1_strict(parse_sentence(f), Semiring::from_id(semiring));
        py::dict d;
        d["ok"] = r.ok();
        d["output"] = r.output ? py::object(py::str(render(r.output))) : py::object(py::none());
        return d;
      },
      py::arg("formula"), py::arg("mode") = "strict", py::arg("semiring") = "viterbi");
}

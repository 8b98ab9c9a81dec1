#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opseries/analysis.hpp"
#include "opseries/enumerate.hpp"
#include "opseries/eqsys.hpp"

namespace py = pybind11;
using namespace opseries;

namespace {

py::int_ big(const Int& v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::list big_list(const std::vector<Int>& v) {
  py::list out;
  for (const Int& x : v) out.append(big(x));
  return out;
}

py::list str_list(const Poly& p) {
  py::list out;
  for (const Rat& c : p) out.append(rat_str(c));
  return out;
}

EqSystem build(const Presentation& p, const std::string& which) {
  if (which == "stump")
    return p.kind == OperadKind::nonsym ? build_stump_system_nonsym(p)
                                        : build_stump_system_shuffle(p);
  if (which == "incl-excl") return build_incl_excl_system_nonsym(p);
  if (which == "symmetric") return build_symmetric_regular_system(p);
  throw usage_error("unknown system '" + which +
                    "' (stump, incl-excl, symmetric)");
}

Series solved(const Presentation& p, const std::string& which, int n) {
  return collapse_t(solve_coefficients(build(p, which), n, false).total);
}

}  // namespace

PYBIND11_MODULE(_opseries, m) {
  m.doc() = "generating series of finitely presented monomial operads";

  py::register_exception_translator([](std::exception_ptr ep) {
    try {
      if (ep) std::rethrow_exception(ep);
    } catch (const parse_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const usage_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const enumeration_limit_error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    } catch (const solver_error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  py::class_<Presentation>(m, "Presentation")
      .def_property_readonly(
          "kind",
          [](const Presentation& p) {
            return p.kind == OperadKind::nonsym ? std::string("nonsym")
                                                : std::string("shuffle");
          })
      .def_property_readonly(
          "generators",
          [](const Presentation& p) {
            py::list out;
            for (const Generator& g : p.gens)
              out.append(py::make_tuple(g.name, g.arity, g.weight));
            return out;
          })
      .def_property_readonly(
          "relations",
          [](const Presentation& p) { return p.relations.size(); })
      .def("__repr__", [](const Presentation& p) {
        return "<Presentation " +
               std::string(p.kind == OperadKind::nonsym ? "nonsym" : "shuffle") +
               ", " + std::to_string(p.gens.size()) + " generator(s), " +
               std::to_string(p.relations.size()) + " relation(s)>";
      });

  m.def("parse", &parse_presentation, py::arg("text"),
        "parse a presentation from its textual description");
  m.def("builtin", &builtin_presentation, py::arg("name"),
        "look up a named presentation from the builtin catalog");

  m.def(
      "basis_dims",
      [](const Presentation& p, int n) { return big_list(basis_dims(p, n)); },
      py::arg("presentation"), py::arg("n"),
      "basis dimensions by direct enumeration of normal monomials");

  m.def(
      "solve_dims",
      [](const Presentation& p, int n, const std::string& system) {
        return big_list(dims(solved(p, system, n)));
      },
      py::arg("presentation"), py::arg("n"), py::arg("system") = "stump",
      "dimensions from the equation system for the generating series");

  m.def(
      "solve_series",
      [](const Presentation& p, int n, const std::string& system) {
        Series g = solved(p, system, n);
        py::list out;
        for (int k = 1; k <= n; ++k)
          out.append(rat_str(g.c[k].empty() ? Rat(0) : g.c[k][0]));
        return out;
      },
      py::arg("presentation"), py::arg("n"), py::arg("system") = "stump",
      "coefficients of the generating series as exact rational strings");

  m.def(
      "emit",
      [](const Presentation& p, const std::string& system,
         const std::string& format) {
        return emit_system(build(p, system), format);
      },
      py::arg("presentation"), py::arg("system") = "stump",
      py::arg("format") = "text", "render the equation system");

  m.def(
      "shuffle_regular",
      [](const Presentation& p) {
        auto r = check_shuffle_regular(p);
        return py::make_tuple(r.regular, r.missing);
      },
      py::arg("presentation"));

  m.def(
      "symmetric_regular",
      [](const Presentation& p) {
        auto r = check_symmetric_regular(p);
        return py::make_tuple(r.regular, r.missing);
      },
      py::arg("presentation"));

  m.def(
      "guess_rational",
      [](const Presentation& p, int max_deg, int n) -> py::object {
        if (n <= 0) n = 3 * max_deg + 2;
        auto rf = guess_rational(solved(p, "stump", n), max_deg);
        if (!rf) return py::none();
        return py::make_tuple(str_list(rf->num), str_list(rf->den));
      },
      py::arg("presentation"), py::arg("max_deg"), py::arg("n") = 0,
      "guess num/den of a rational form for the series; None if absent");

  m.def(
      "guess_algebraic",
      [](const Presentation& p, int deg_y, int deg_z, int n) -> py::object {
        if (n <= 0) n = (deg_y + 1) * (deg_z + 1) + 4;
        Series g = solved(p, "stump", n);
        auto eq = guess_algebraic(g, deg_y, deg_z);
        if (!eq) return py::none();
        py::list coeffs;
        for (const Poly& c : eq->coeffs) coeffs.append(str_list(c));
        py::dict out;
        out["deg_y"] = eq->deg_y;
        out["coeffs"] = coeffs;
        out["text"] = algebraic_text(*eq);
        out["verified"] = verify_equation(g, *eq);
        return out;
      },
      py::arg("presentation"), py::arg("deg_y"), py::arg("deg_z"),
      py::arg("n") = 0,
      "guess a polynomial equation satisfied by the series; None if absent");
}

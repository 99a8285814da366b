#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trajquad/coulomb.hpp"
#include "trajquad/errors.hpp"
#include "trajquad/excited.hpp"
#include "trajquad/gexpand.hpp"
#include "trajquad/greens.hpp"
#include "trajquad/oracle.hpp"
#include "trajquad/oscpert.hpp"

namespace py = pybind11;
using namespace trajquad;

namespace {

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.numerator() + "/" + r.denominator());
}

// int, str or Fraction
Rational rational(const py::handle& h) { return Rational::parse(py::str(h).cast<std::string>()); }

std::vector<Rational> rationals(const py::sequence& s) {
  std::vector<Rational> out;
  for (auto h : s) out.push_back(rational(h));
  return out;
}

TrajectoryGrid grid_for(const std::string& potential, double origin, double extent, std::size_t points, int direction) {
  return build_grid(Potential1D::polynomial(MultiPoly::parse(potential), origin), extent, points, direction);
}

}  // namespace

PYBIND11_MODULE(trajquad, m) {
  m.doc() = "Trajectory-quadrature series: exact perturbation tables, Coulomb and Stark series, numeric hierarchy";
  m.attr("__version__") = TRAJQUAD_VERSION;

  // kind is the CLI exit code family: 1 config, 2 method, 3 tolerance
  py::exception<Error>(m, "TrajquadError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = py::module_::import("trajquad").attr("TrajquadError");
      py::object exc = type(e.what());
      exc.attr("kind") = static_cast<int>(e.kind());
      exc.attr("name") = e.name();
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<MultiPoly>(m, "Poly")
      .def(py::init([](const std::string& s) { return MultiPoly::parse(s); }))
      .def("__str__", &MultiPoly::to_string)
      .def("__repr__", [](const MultiPoly& p) { return "Poly('" + p.to_string() + "')"; })
      .def("__eq__", [](const MultiPoly& a, const MultiPoly& b) { return a == b; })
      .def("__add__", [](const MultiPoly& a, const MultiPoly& b) { return a + b; })
      .def("__sub__", [](const MultiPoly& a, const MultiPoly& b) { return a - b; })
      .def("__mul__", [](const MultiPoly& a, const MultiPoly& b) { return a * b; })
      .def("is_zero", &MultiPoly::is_zero)
      .def("variables", &MultiPoly::variables)
      .def("evaluate", &MultiPoly::evaluate, py::arg("values"))
      .def("coefficient_of", &MultiPoly::coefficient_of)
      .def("terms", [](const MultiPoly& p) {
        py::list out;
        for (const auto& [pw, c] : p.terms()) out.append(py::make_tuple(pw, fraction(c)));
        return out;
      })
      .def("differentiate", [](const MultiPoly& p, const std::string& v) { return differentiate(p, canonical_symbol(v)); });

  py::enum_<Parity>(m, "Parity").value("even", Parity::even).value("odd", Parity::odd);

  py::class_<PerturbSeries>(m, "PerturbSeries")
      .def_readonly("parity", &PerturbSeries::parity)
      .def_readonly("p", &PerturbSeries::p)
      .def_readonly("order", &PerturbSeries::order)
      .def_readonly("delta", &PerturbSeries::delta)
      .def_readonly("coeffs", &PerturbSeries::coeffs)
      .def("delta_values", &PerturbSeries::delta_values, py::arg("g"))
      .def("shift", &PerturbSeries::shift, py::arg("g"), py::arg("eps"));
  m.def("solve_even", &solve_even, py::arg("p"), py::arg("order"));
  m.def("solve_odd", &solve_odd, py::arg("p"), py::arg("order"));
  m.def("gamma_even", &gamma_even);
  m.def("gamma_odd", &gamma_odd);

  py::class_<CoulombSolution>(m, "CoulombSolution")
      .def_readonly("potential", &CoulombSolution::potential)
      .def_readonly("s_terms", &CoulombSolution::s_terms)
      .def_readonly("e_terms", &CoulombSolution::e_terms)
      .def_readonly("order", &CoulombSolution::order)
      .def("assembled_energy", [](const CoulombSolution& s, int n) { return assembled_energy(s, n); })
      .def("energy", [](const CoulombSolution& s, double g, double eps, int n) { return assemble(s, g, eps, n).energy; },
           py::arg("g"), py::arg("eps"), py::arg("truncation"));
  m.def("solve_isotropic", [](const std::string& U, int order) { return solve_isotropic(MultiPoly::parse(U), order); },
        py::arg("potential"), py::arg("order"));
  m.def("solve_stark", &solve_stark, py::arg("order"));

  m.def(
      "hierarchy",
      [](const std::string& potential, int order, double extent, std::size_t points, double origin, int direction) {
        auto grid = grid_for(potential, origin, extent, points, direction);
        auto sol = hierarchy(grid, order);
        py::dict out;
        out["nodes"] = grid.nodes;
        out["s0"] = grid.s0;
        out["s_terms"] = sol.s_terms;
        out["e_terms"] = sol.e_terms;
        return out;
      },
      py::arg("potential"), py::arg("order") = 3, py::arg("extent") = 2.0, py::arg("points") = 401,
      py::arg("origin") = 0.0, py::arg("direction") = 1);

  m.def(
      "identity_checks",
      [](double g, double L, std::size_t n) {
        py::list out;
        for (const auto& r : run_identity_checks(g, L, n)) {
          py::dict d;
          d["identity"] = r.identity;
          d["grid_size"] = r.grid_size;
          d["max_residual"] = r.max_residual;
          d["tolerance"] = r.tolerance;
          d["passed"] = r.passed();
          out.append(d);
        }
        return out;
      },
      py::arg("g") = 1.0, py::arg("half_width") = 8.0, py::arg("points") = 4001);

  m.def(
      "solve_1d",
      [](const std::function<double(double)>& V, double a, double b, std::size_t n, std::size_t k) {
        return solve_1d(V, a, b, n, k).eigenvalues;
      },
      py::arg("potential"), py::arg("a"), py::arg("b"), py::arg("n"), py::arg("levels") = 1);
  m.def(
      "solve_radial",
      [](double g, const std::function<double(double)>& U, double eps, double r_max, std::size_t n) {
        return solve_radial(g, U, eps, r_max, n).eigenvalues[0];
      },
      py::arg("g"), py::arg("potential"), py::arg("eps"), py::arg("r_max") = 40.0, py::arg("n") = 2000);

  m.def(
      "excited_leading",
      [](const py::sequence& freqs, const std::vector<int>& occupation) {
        ExcitedSpec spec{rationals(freqs), occupation};
        auto lead = chi0_e0(spec);
        return py::make_tuple(lead.chi0, fraction(lead.e0), chi1_harmonic(spec));
      },
      py::arg("freqs"), py::arg("occupation"));
  m.def(
      "excited_e1",
      [](const std::string& potential, int n, double extent, std::size_t points) {
        auto grid = grid_for(potential, 0.0, extent, points, 1);
        return excited_e1_numeric(grid, hierarchy(grid, 1).s(1), n);
      },
      py::arg("potential"), py::arg("n"), py::arg("extent") = 1.0, py::arg("points") = 2001);
}

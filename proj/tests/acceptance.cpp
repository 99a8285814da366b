// One PASS/FAIL line per acceptance criterion. Exit status is 0 when every
// failure is listed in kExpectedFailures.
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trajquad/coulomb.hpp"
#include "trajquad/excited.hpp"
#include "trajquad/gexpand.hpp"
#include "trajquad/greens.hpp"
#include "trajquad/multipoly.hpp"
#include "trajquad/oracle.hpp"
#include "trajquad/oscpert.hpp"
#include "trajquad/trajectory.hpp"

using namespace trajquad;

namespace {

// The printed b₂ = -ε²/(2g²) contradicts its own product γ₀₀Γ₁₁ε² = +ε²/(2g²)
// and the closed form e^{-εx/g}; the solver follows the closed form.
const std::map<std::string, std::string> kExpectedFailures = {
    {"2b", "printed b2 has the wrong sign; e^{-eps x/g} and the table product give +eps^2/(2g^2)"}};

struct Line {
  std::string id, what;
  bool pass;
  std::string detail;
};
std::vector<Line> lines;

void record(std::string id, std::string what, bool pass, std::string detail = "") {
  lines.push_back({std::move(id), std::move(what), pass, std::move(detail)});
}

// Runs a block; an exception counts as failure with its message as detail.
void criterion(const std::string& id, const std::string& what, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("threw ") + e.what();
  }
  record(id, what, ok, detail);
}

MultiPoly P(const char* s) { return MultiPoly::parse(s); }
MultiPoly G(const Rational& c, int k) { return MultiPoly::monomial(c, {{sym::ghat, k}}); }

MultiPoly laurent(std::vector<std::pair<std::vector<int>, Rational>> terms) {
  MultiPoly::TermMap t;
  for (auto& [e, c] : terms) t.emplace(e, c);
  return MultiPoly::from_raw({sym::eps, sym::ghat}, std::move(t), {sym::ghat});
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

std::string mismatch(const char* name, const MultiPoly& got, const MultiPoly& want) {
  return std::string(name) + ": got " + got.to_string() + ", want " + want.to_string();
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Keeps the terms with ε-degree at most k.
MultiPoly eps_truncate(const MultiPoly& p, int k) {
  MultiPoly out;
  out.allow_laurent(sym::ghat);
  for (int j = 0; j <= k; ++j) out += p.coefficient_of(sym::eps, j) * MultiPoly::variable(sym::eps, j);
  return out;
}

void c1() {
  criterion("1", "x^4 series: Delta(1) = 3/(4g^2), Delta(2) = -21/(8g^5)", [](std::string& d) {
    auto s = solve_even(2, 2);
    d = "Delta(1) = " + s.delta[0].to_string() + ", Delta(2) = " + s.delta[1].to_string();
    return s.delta[0] == G(Rational(3, 4), 2) && s.delta[1] == G(Rational(-21, 8), 5);
  });
}

void c2() {
  criterion("2a", "x series: Delta(2) = -1/(2g^2), Delta(4) = Delta(6) = 0", [](std::string& d) {
    auto s = solve_odd(0, 6);
    bool ok = s.delta[1] == G(Rational(-1, 2), 2);
    for (std::size_t k : {0u, 2u, 3u, 4u, 5u}) ok = ok && s.delta[k].is_zero();
    d = "Delta(2) = " + s.delta[1].to_string();
    return ok;
  });
  criterion("2b", "x series: b1, b2, b3 = -eps/g, -eps^2/(2g^2), -eps^3/(6g^3) as printed", [](std::string& d) {
    auto s = solve_odd(0, 6);
    const MultiPoly b1 = s.coeffs[0][1], b2 = s.coeffs[1][2], b3 = s.coeffs[2][3];
    const MultiPoly w1 = G(Rational(-1), 1), w2 = G(Rational(-1, 2), 2), w3 = G(Rational(-1, 6), 3);
    std::string bad;
    if (b1 != w1) bad += mismatch("b1", b1, w1) + "; ";
    if (b2 != w2) bad += mismatch("b2", b2, w2) + "; ";
    if (b3 != w3) bad += mismatch("b3", b3, w3) + "; ";
    d = bad.empty() ? "all three match" : bad;
    return bad.empty();
  });
  criterion("2c", "x series: e^{-tau} equals e^{-eps x/g} through eps^6", [](std::string& d) {
    const int K = 6;
    auto s = solve_odd(0, K);
    MultiPoly got(1), want(1);
    const MultiPoly eps = MultiPoly::variable(sym::eps), x = MultiPoly::variable(sym::x);
    for (int k = 1; k <= K; ++k) {
      for (std::size_t n = 0; n < s.coeffs[static_cast<std::size_t>(k - 1)].size(); ++n)
        got += s.coeffs[static_cast<std::size_t>(k - 1)][n] * eps.pow(k) * x.pow(static_cast<int>(n));
      want += (G(Rational(-1), 1) * eps * x).pow(k) * (Rational(1) / factorial(k));
    }
    d = got == want ? "exact through order 6" : "difference " + (got - want).to_string();
    return got == want;
  });
}

void c3() {
  criterion("3", "Coulomb U = r^2: S2..S4, E4, E8 and the assembled energy", [](std::string& d) {
    auto s = solve_isotropic(P("r^2"), 8);
    std::string bad;
    auto need = [&](const char* name, const MultiPoly& got, const MultiPoly& want) {
      if (got != want) bad += mismatch(name, got, want) + "; ";
    };
    need("S2", s.s_terms[2], P("1/3*eps*r^3"));
    need("S3", s.s_terms[3], P("eps*r^2"));
    need("S4", s.s_terms[4], P("-1/10*eps^2*r^5"));
    need("E4", s.e_terms[4], P("3*eps"));
    need("E8", s.e_terms[8], P("-129/4*eps^2"));
    need("E", assembled_energy(s, 8), laurent({{{0, -4}, Rational(-1, 2)}, {{1, 4}, Rational(3)}, {{2, 12}, Rational(-129, 4)}}));
    d = bad.empty() ? "E = " + assembled_energy(s, 8).to_string() : bad;
    return bad.empty();
  });
}

void c4() {
  criterion("4", "Stark: S2..S11, E6 = -9/4 eps^2, E12 = -3555/64 eps^4, assembled energy", [](std::string& d) {
    auto s = solve_stark(12);
    std::string bad;
    struct Want {
      int n;
      const char* poly;
      int exact_below;  // compare only ε-degrees below this (the rest is O(ε^k))
    };
    const std::vector<Want> printed = {
        {2, "1/2*eps*r^2*u", 99},
        {3, "eps*r*u", 99},
        {4, "-1/24*eps^2*r^3*(1 + 3*u^2)", 99},
        {5, "-7/16*eps^2*r^2*(1 + u^2)", 99},
        {6, "1/16*eps^3*r^4*u*(1 + u^2)", 99},
        {7, "13/48*eps^3*r^3*u*(3 + u^2)", 99},
        {8, "53/16*eps^3*r^2*u - 1/128*eps^4*r^5*(1 + 10*u^2 + 5*u^4)", 99},
        {9, "53/8*eps^3*r*u - 99/512*eps^4*r^4*(1 + 6*u^2 + u^4)", 99},
        {10, "-761/384*eps^4*r^3*(1 + 3*u^2)", 5},
        {11, "-3131/256*eps^4*r^2*(1 + u^2)", 5},
    };
    for (const auto& w : printed) {
      MultiPoly got = s.s_terms[static_cast<std::size_t>(w.n)];
      if (w.exact_below != 99) got = eps_truncate(got, w.exact_below - 1);
      if (got != P(w.poly)) bad += mismatch(("S" + std::to_string(w.n)).c_str(), got, P(w.poly)) + "; ";
    }
    for (int n = 1; n <= 12; ++n) {
      MultiPoly want = n == 6 ? P("-9/4*eps^2") : n == 12 ? P("-3555/64*eps^4") : MultiPoly();
      if (s.e_terms[static_cast<std::size_t>(n)] != want)
        bad += mismatch(("E" + std::to_string(n)).c_str(), s.e_terms[static_cast<std::size_t>(n)], want) + "; ";
    }
    auto e = assembled_energy(s, 12);
    auto we = laurent({{{0, -4}, Rational(-1, 2)}, {{2, 8}, Rational(-9, 4)}, {{4, 20}, Rational(-3555, 64)}});
    if (e != we) bad += mismatch("E", e, we) + "; ";

    // wave-function exponent through ε³ at sample points
    auto act = eps_truncate(assembled_action(s, 12), 3);
    double worst = 0.0;
    for (double g : {0.8, 1.3})
      for (double r : {0.4, 2.5})
        for (double u : {-0.6, 0.3, 1.0}) {
          double eps = 0.1, gr = g * g * r;
          double want = g * g * r + eps * r / std::pow(g, 4) * u * (1 + 0.5 * gr) -
                        eps * eps * r * r / std::pow(g, 8) * (7.0 / 16 * (1 + u * u) + gr / 24 * (1 + 3 * u * u)) +
                        std::pow(eps, 3) * r / std::pow(g, 16) * u *
                            (53.0 / 8 * (1 + 0.5 * gr) + 13.0 / 48 * gr * gr * (3 + u * u) +
                             1.0 / 16 * gr * gr * gr * (1 + u * u));
          double got = act.evaluate({{sym::ghat, 1 / g}, {sym::r, r}, {sym::u, u}, {sym::eps, eps}});
          worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
        }
    if (worst > 1e-12) bad += "assembled action off by " + sci(worst) + "; ";
    d = bad.empty() ? "E = " + e.to_string() : bad;
    return bad.empty();
  });
}

void c5() {
  criterion("5", "Green's identities at g = 1, 4001 points on [-8, 8]", [](std::string& d) {
    auto reports = run_identity_checks(1.0, 8.0, 4001);
    // tolerances pinned here; the battery carries its own too
    const std::vector<std::pair<std::string, double>> pinned = {
        {"Dbar H_1 ", 1e-7}, {"Dbar H_2 ", 1e-7}, {"Dbar H_3 ", 1e-7}, {"Dbar H_4 ", 1e-7},
        {"(1 + C T) Dbar f = C f, f = x^2", 1e-6}, {"(1 + C T) Dbar f = C f, f = x^3", 1e-6},
        {"(T + V - E) e^{-gS} Dbar f = e^{-gS} f, f = x^2", 1e-5},
        {"(T + V - E) e^{-gS} Dbar f = e^{-gS} f, f = x^3", 1e-5}};
    bool ok = true;
    std::string worst;
    for (const auto& [prefix, tol] : pinned) {
      bool found = false;
      for (const auto& r : reports)
        if (r.identity.rfind(prefix, 0) == 0) {
          found = true;
          if (!(r.max_residual <= tol)) {
            ok = false;
            worst += r.identity + " = " + sci(r.max_residual) + "; ";
          }
        }
      if (!found) {
        ok = false;
        worst += "missing " + prefix + "; ";
      }
    }
    for (const auto& r : reports)
      if (!r.passed()) {
        ok = false;
        worst += r.identity + " = " + sci(r.max_residual) + "; ";
      }
    d = ok ? std::to_string(reports.size()) + " identities within tolerance" : worst;
    return ok;
  });
}

void c6() {
  criterion("6", "hierarchy: harmonic S1 = S2 = E1 = E2 = 0; PDE residuals for x^2/2 + x^4/10", [](std::string& d) {
    auto h = build_grid(Potential1D::polynomial(P("1/2*x^2")), 3.0, 401, 1);
    auto hs = hierarchy(h, 2);
    double harm = std::max({max_abs(hs.s(1)), max_abs(hs.s(2)), std::abs(hs.e_terms[1]), std::abs(hs.e_terms[2])});
    auto q = build_grid(Potential1D::polynomial(P("1/2*x^2 + 1/10*x^4")), 2.0, 401, 1);
    auto qs = hierarchy(q, 3);
    double pde = 0.0;
    for (int k = 1; k <= 3; ++k) pde = std::max(pde, max_abs(pde_residual(q, qs, k)));
    d = "harmonic max " + sci(harm) + ", PDE residual " + sci(pde);
    return harm <= 1e-8 && pde < 1e-7;
  });
}

void c7() {
  criterion("7a", "g = 2, eps = 0.02 x^4: series through Delta(2) vs eigensolver within 2 eps^3 |Delta(3)|",
            [](std::string& d) {
              const double g = 2.0, eps = 0.02;
              auto s = solve_even(2, 3);
              auto dv = s.delta_values(g);
              auto r = solve_1d([&](double x) { return 0.5 * g * g * x * x + eps * x * x * x * x; }, -6.0, 6.0,
                                1200, 1);
              double diff = std::abs(r.eigenvalues[0] - (g / 2 + eps * dv[0] + eps * eps * dv[1]));
              double bound = 2 * std::pow(eps, 3) * std::abs(dv[2]);
              d = "diff " + sci(diff) + ", bound " + sci(bound) + ", oracle error estimate " + sci(r.convergence[0]);
              return diff <= bound;
            });
  criterion("7b", "radial Coulomb g = 1, eps = 1e-3, U = r^2: assembled series vs eigensolver to 5e-7",
            [](std::string& d) {
              const double eps = 1e-3;
              auto s = solve_isotropic(P("r^2"), 12);
              auto r = solve_radial(1.0, [](double x) { return x * x; }, eps, 40.0, 2000);
              double d12 = std::abs(assemble(s, 1.0, eps, 12).energy - r.eigenvalues[0]);
              double d8 = std::abs(assemble(s, 1.0, eps, 8).energy - r.eigenvalues[0]);
              d = "N = 12 diff " + sci(d12) + " (N = 8 diff " + sci(d8) + ", its eps^3 term is 5451/4 eps^3 = " +
                  sci(5451.0 / 4 * eps * eps * eps) + ")";
              return d12 <= 5e-7;
            });
}

void c8() {
  criterion("8", "excited: chi0 + chi1/g gives the top two Hermite terms; harmonic E1 = 0", [](std::string& d) {
    std::string bad;
    for (int n = 1; n <= 4; ++n) {
      ExcitedSpec spec{{Rational(1)}, {n}};
      auto lead = chi0_e0(spec);
      MultiPoly got = lead.chi0 + G(Rational(1), 1) * chi1_harmonic(spec);
      // H_n(sqrt(g) x) / (2 sqrt(g))^n
      auto h = hermite(n);
      Rational top = h.coefficient({{sym::x, n}});
      MultiPoly want = MultiPoly::variable(sym::x, n);
      if (n >= 2) want += G(h.coefficient({{sym::x, n - 2}}) / top, 1) * MultiPoly::variable(sym::x, n - 2);
      if (got != want) bad += mismatch(("n=" + std::to_string(n)).c_str(), got, want) + "; ";
    }
    auto grid = build_grid(Potential1D::polynomial(P("1/2*x^2")), 1.0, 2001, 1);
    auto s1 = hierarchy(grid, 1).s(1);
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) worst = std::max(worst, std::abs(excited_e1_numeric(grid, s1, n)));
    if (worst > 1e-6) bad += "harmonic E1 = " + sci(worst) + "; ";
    d = bad.empty() ? "n <= 4 exact, max |E1| " + sci(worst) : bad;
    return bad.empty();
  });
}

void c9() {
  criterion("9a", "exact algebra: ring axioms and calculus identities on 500 random cases", [](std::string& d) {
    std::mt19937 rng(7u);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto poly = [&](const std::vector<std::string>& vars, int lo, int hi) {
      MultiPoly out;
      for (int t = pick(1, 4); t > 0; --t) {
        std::vector<std::pair<std::string, int>> pw;
        for (const auto& v : vars) pw.emplace_back(v, pick(lo, hi));
        int num = pick(-9, 9);
        out += MultiPoly::monomial(Rational(num == 0 ? 1 : num, pick(1, 6)), pw);
      }
      return out;
    };
    const std::vector<std::string> polar = {sym::r, sym::u, sym::eps}, line = {sym::x, sym::eps};
    int bad = 0;
    for (int i = 0; i < 500; ++i) {
      auto a = poly(polar, 0, 3), b = poly(polar, 0, 3), c = poly(polar, 0, 3);
      bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c &&
                a * b == b * a && (a - a).is_zero() && MultiPoly::parse(a.to_string()) == a;
      auto l = poly({sym::r}, -3, 3) * poly({sym::u, sym::eps}, 0, 3);
      if (l.coefficient_of(sym::r, -1).is_zero()) ok = ok && differentiate(integrate_r(l), sym::r) == l;
      auto f = poly(line, 0, 3), g = poly(line, 0, 3);
      const auto geo = Geometry::cartesian_1d;
      ok = ok && laplacian(f * g, geo) == f * laplacian(g, geo) + MultiPoly(2) * grad_dot(f, g, geo) + g * laplacian(f, geo);
      ok = ok && angular_average(a + b) == angular_average(a) + angular_average(b) &&
           angular_average(angular_average(a)) == angular_average(a);
      bad += ok ? 0 : 1;
    }
    d = std::to_string(500 - bad) + "/500 cases hold";
    return bad == 0;
  });
  criterion("9b", "operator chain: tables invert the harmonic operator on x^k, n <= 6", [](std::string& d) {
    const MultiPoly x = MultiPoly::variable(sym::x), gh = G(Rational(1), 1);
    auto op = [&](const MultiPoly& phi) {
      auto d1 = differentiate(phi, sym::x);
      return x * d1 - G(Rational(1, 2), 1) * differentiate(d1, sym::x);
    };
    for (int n = 1; n <= 6; ++n) {
      MultiPoly even, odd;
      for (int m = 1; m <= n; ++m) even += gamma_even(m, n) * x.pow(2 * m);
      for (int m = 0; m <= n; ++m) odd += gamma_odd(m, n) * x.pow(2 * m + 1);
      if (op(even) != gh * x.pow(2 * n) - gh * gamma_even(1, n) || op(odd) != gh * x.pow(2 * n + 1)) {
        d = "fails at n = " + std::to_string(n);
        return false;
      }
    }
    d = "even and odd tables exact for n = 1..6";
    return true;
  });
  criterion("9c", "trajectory quadrature: Simpson error shrinks at least 4x per doubling", [](std::string& d) {
    GridOptions opts;
    opts.rule = PanelRule::simpson;
    auto err = [&](std::size_t n) {
      auto g = build_grid(Potential1D::polynomial(P("1/2*x^2 + 1/10*x^4")), 2.0, n, 1, opts);
      double worst = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        double x = g.nodes[i];
        worst = std::max(worst, std::abs(g.s0[i] - 5.0 / 3.0 * (std::pow(1.0 + x * x / 5.0, 1.5) - 1.0)));
      }
      return worst;
    };
    double prev = err(17), lowest = 1e9;
    for (std::size_t n : {33u, 65u, 129u}) {
      double cur = err(n);
      lowest = std::min(lowest, prev / cur);
      prev = cur;
    }
    d = "smallest ratio " + sci(lowest);
    return lowest >= 4.0;
  });
}

}  // namespace

int main() {
  c1();
  c2();
  c3();
  c4();
  c5();
  c6();
  c7();
  c8();
  c9();
  int unexpected = 0;
  for (const auto& l : lines) {
    std::printf("%s %-3s %s: %s\n", l.pass ? "PASS" : "FAIL", l.id.c_str(), l.what.c_str(), l.detail.c_str());
    auto it = kExpectedFailures.find(l.id);
    if (!l.pass && it != kExpectedFailures.end()) std::printf("     known failure: %s\n", it->second.c_str());
    else if (!l.pass) ++unexpected;
    else if (it != kExpectedFailures.end()) std::printf("     listed as a known failure but passed\n");
  }
  std::printf("%d unexpected failure(s)\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}

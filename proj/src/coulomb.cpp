#include "trajquad/coulomb.hpp"

#include <cmath>

#include "trajquad/errors.hpp"
#include "trajquad/numerics.hpp"

namespace trajquad {

namespace {

void validate_potential(const MultiPoly& U) {
  for (const auto& v : U.variables())
    if (U.has_variable(v) && v != sym::r && v != sym::u)
      throw VariableMismatch("Coulomb perturbation must depend on r and u only, found " + v);
  if (U.min_degree(sym::r) < 0) throw ConfigError("Coulomb perturbation must be polynomial in r");
  if (!U.coefficient_of(sym::r, 0).is_zero()) throw ConfigError("Coulomb perturbation must vanish at r = 0");
}

MultiPoly ghat_power(int k) {
  MultiPoly::TermMap t;
  t.emplace(MultiPoly::Exponents{k}, Rational(1));
  return MultiPoly::from_raw({sym::ghat}, std::move(t), {sym::ghat});
}

}  // namespace

CoulombSolution solve_coulomb(const MultiPoly& U, int order) {
  if (order < 0) throw ConfigError("order must be non-negative");
  validate_potential(U);
  CoulombSolution sol;
  sol.potential = U;
  sol.order = order;
  sol.s_terms.push_back(MultiPoly::variable(sym::r));
  sol.e_terms.push_back(MultiPoly(Rational(-1, 2)));
  const MultiPoly eps = MultiPoly::variable(sym::eps);
  const MultiPoly half(Rational(1, 2));
  for (int n = 1; n <= order; ++n) {
    MultiPoly K;
    for (int m = 1; m < n; ++m)
      K -= half * grad_dot(sol.s_terms[static_cast<std::size_t>(m)], sol.s_terms[static_cast<std::size_t>(n - m)],
                           Geometry::radial_polar);
    K += half * laplacian(sol.s_terms[static_cast<std::size_t>(n - 1)], Geometry::radial_polar);
    if (n == 2) K += eps * U;
    if (n == 1) K -= MultiPoly::variable(sym::r, -1);

    MultiPoly e = angular_average(K.coefficient_of(sym::r, 0));
    MultiPoly s = integrate_r(K - e);
    if (s.min_degree(sym::r) < 0)
      throw LogSingularity("S_" + std::to_string(n) + " carries a negative power of r: " + s.to_string());
    sol.e_terms.push_back(std::move(e));
    sol.s_terms.push_back(std::move(s));
  }
  return sol;
}

CoulombSolution solve_isotropic(const MultiPoly& U, int order) {
  if (U.has_variable(sym::u)) throw ConfigError("isotropic perturbation must not depend on u");
  return solve_coulomb(U, order);
}

CoulombSolution solve_stark(int order) {
  if (order < 2) throw ConfigError("Stark series needs order >= 2");
  return solve_coulomb(MultiPoly::variable(sym::r) * MultiPoly::variable(sym::u), order);
}

MultiPoly assembled_energy(const CoulombSolution& sol, int truncation) {
  MultiPoly out;
  out.allow_laurent(sym::ghat);
  for (int n = 0; n <= truncation && n <= sol.order; ++n)
    out += ghat_power(2 * n - 4) * sol.e_terms[static_cast<std::size_t>(n)];
  return out;
}

MultiPoly assembled_action(const CoulombSolution& sol, int truncation) {
  MultiPoly out;
  out.allow_laurent(sym::ghat);
  for (int n = 0; n <= truncation && n <= sol.order; ++n)
    out += ghat_power(2 * n - 2) * sol.s_terms[static_cast<std::size_t>(n)];
  return out;
}

CoulombAssembly assemble(const CoulombSolution& sol, double g, double eps, int truncation) {
  if (!(g > 0)) throw ConfigError("assembly needs g > 0");
  if (truncation > sol.order) throw ConfigError("truncation beyond the computed order");
  double e = 0.0;
  for (int n = 0; n <= truncation; ++n)
    e += std::pow(g, -(2.0 * n - 4.0)) * sol.e_terms[static_cast<std::size_t>(n)].evaluate({{sym::eps, eps}});
  std::vector<MultiPoly> terms(sol.s_terms.begin(), sol.s_terms.begin() + truncation + 1);
  auto action = [terms, g, eps](double r, double u) {
    double acc = 0.0;
    for (std::size_t n = 0; n < terms.size(); ++n)
      acc += std::pow(g, -(2.0 * static_cast<double>(n) - 2.0)) *
             terms[n].evaluate({{sym::r, r}, {sym::u, u}, {sym::eps, eps}});
    return acc;
  };
  return {e, action};
}

MultiPoly schrodinger_residual(const CoulombSolution& sol, int truncation) {
  MultiPoly S = assembled_action(sol, truncation), E = assembled_energy(sol, truncation);
  MultiPoly half(Rational(1, 2));
  MultiPoly res = -(half * grad_dot(S, S, Geometry::radial_polar)) + half * laplacian(S, Geometry::radial_polar) -
                  ghat_power(-2) * MultiPoly::variable(sym::r, -1) + MultiPoly::variable(sym::eps) * sol.potential -
                  E;
  return res;
}

namespace {

struct Moments {
  double n0, d0, n1, d1;
};

Moments shift_moments(const CoulombSolution& sol, double g) {
  if (sol.potential.has_variable(sym::u)) throw ConfigError("integral shift check needs an isotropic potential");
  // ε-linear part of the wave-function exponent beyond S_0, order by order
  std::vector<std::pair<int, MultiPoly>> parts;
  for (int n = 1; n <= sol.order; ++n) {
    MultiPoly lin = sol.s_terms[static_cast<std::size_t>(n)].coefficient_of(sym::eps, 1);
    if (!lin.is_zero()) parts.emplace_back(n, lin);
  }
  const MultiPoly& U = sol.potential;
  const double g2 = g * g, R = 80.0 / g2;
  auto s1f = [&](double r) {
    double acc = 0.0;
    for (auto& [n, p] : parts) acc += std::pow(g, -(2.0 * n - 2.0)) * p.evaluate({{sym::r, r}});
    return acc;
  };
  auto Uf = [&](double r) { return U.evaluate({{sym::r, r}}); };
  auto w = [&](double r) { return std::exp(-2.0 * g2 * r) * r * r; };
  auto integral = [&](const std::function<double(double)>& f) {
    double peak = 0.0;
    for (int i = 1; i <= 400; ++i) peak = std::max(peak, std::abs(f(R * i / 400.0)));
    if (std::abs(f(R)) > 1e-14 * peak) throw DomainTooSmall("integral shift quadrature does not decay by r_max");
    return num::gauss_kronrod(f, 0.0, R, 1e-15 * std::max(peak, 1e-300) * R);
  };
  Moments m;
  m.d0 = integral(w);
  m.n0 = integral([&](double r) { return w(r) * Uf(r); });
  m.d1 = integral([&](double r) { return w(r) * s1f(r); });
  m.n1 = integral([&](double r) { return w(r) * Uf(r) * s1f(r); });
  return m;
}

}  // namespace

ShiftCoefficients integral_shift_coefficients(const CoulombSolution& sol, double g) {
  Moments m = shift_moments(sol, g);
  return {m.n0 / m.d0, -m.n1 / m.d0 + m.n0 * m.d1 / (m.d0 * m.d0)};
}

double integral_shift_check(const CoulombSolution& sol, double g, double eps, int order) {
  if (order != 1 && order != 2) throw ConfigError("integral shift order must be 1 or 2");
  const double base = -0.5 * std::pow(g, 4);
  if (eps == 0.0) return base;
  Moments m = shift_moments(sol, g);
  if (order == 1) return base + eps * m.n0 / m.d0;
  return base + eps * (m.n0 - eps * m.n1) / (m.d0 - eps * m.d1);
}

}  // namespace trajquad

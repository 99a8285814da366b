#pragma once

#include <functional>
#include <vector>

#include "trajquad/multipoly.hpp"

namespace trajquad {

struct CoulombSolution {
  MultiPoly potential;             // U(r, u)
  std::vector<MultiPoly> s_terms;  // S_0..S_N in (r, u, ε)
  std::vector<MultiPoly> e_terms;  // E_0..E_N in ε
  int order = 0;
};

CoulombSolution solve_isotropic(const MultiPoly& U, int order);
CoulombSolution solve_stark(int order);
// Shared engine; U may depend on r and u.
CoulombSolution solve_coulomb(const MultiPoly& U, int order);

// Σ_n ĝ^(2n-4) E_n, with ĝ allowed negative powers.
MultiPoly assembled_energy(const CoulombSolution& sol, int truncation);
// Σ_n ĝ^(2n-2) S_n.
MultiPoly assembled_action(const CoulombSolution& sol, int truncation);

struct CoulombAssembly {
  double energy;
  std::function<double(double, double)> action;  // S(r, u)
};
CoulombAssembly assemble(const CoulombSolution& sol, double g, double eps, int truncation);

// -1/2 (∇S)^2 + 1/2 ∇²S - ĝ^-2/r + εU - E with S and E assembled to `truncation`.
MultiPoly schrodinger_residual(const CoulombSolution& sol, int truncation);

// Energy from the integral form -g^4/2 + ε ∫ψ0 U ψ / ∫ψ0 ψ with ψ = e^{-g²r}
// (order 1) or e^{-g²r}(1 - ε s1) (order 2), s1 the ε-linear part of S beyond S_0.
double integral_shift_check(const CoulombSolution& sol, double g, double eps, int order);

struct ShiftCoefficients {
  double first;   // coefficient of ε
  double second;  // coefficient of ε² implied by the order-2 profile
};
ShiftCoefficients integral_shift_coefficients(const CoulombSolution& sol, double g);

}  // namespace trajquad

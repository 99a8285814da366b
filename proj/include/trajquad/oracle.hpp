#pragma once

#include <functional>
#include <ostream>
#include <vector>

namespace trajquad {

struct EigenResult {
  std::vector<double> eigenvalues;  // Richardson-extrapolated, ascending
  std::vector<double> coarse;       // raw eigenvalues at n points
  std::vector<double> fine;         // raw eigenvalues at 2n+1 points
  std::vector<double> convergence;  // error estimate per eigenvalue
  double a = 0.0, b = 0.0;
  std::size_t points = 0;
};

// Number of eigenvalues below lambda of the symmetric tridiagonal matrix with
// diagonal d and constant off-diagonal e.
std::size_t sturm_count(const std::vector<double>& d, double e, double lambda);

// k-th (0-based) eigenvalue by bisection to an absolute bracket of tol.
double tridiagonal_eigenvalue(const std::vector<double>& d, double e, std::size_t k, double tol = 1e-13);

// Lowest k eigenvalues of -1/2 d^2/dx^2 + V on [a, b] with Dirichlet walls and
// n interior points.
EigenResult solve_1d(const std::function<double(double)>& potential, double a, double b, std::size_t n,
                     std::size_t k);

// Ground state of -1/2 u'' + (-g^2/r + eps U(r)) u on (0, r_max], u(0) = 0.
EigenResult solve_radial(double g, const std::function<double(double)>& U, double eps, double r_max,
                         std::size_t n);

void write_csv(std::ostream& os, const EigenResult& res);

}  // namespace trajquad

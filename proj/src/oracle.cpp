#include "trajquad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "trajquad/errors.hpp"

namespace trajquad {

std::size_t sturm_count(const std::vector<double>& d, double e, double lambda) {
  const double e2 = e * e;
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = d[i] - lambda - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -tiny;
    if (q < 0) ++count;
  }
  return count;
}

double tridiagonal_eigenvalue(const std::vector<double>& d, double e, std::size_t k, double tol) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double di : d) {
    lo = std::min(lo, di - 2 * std::abs(e));
    hi = std::max(hi, di + 2 * std::abs(e));
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (sturm_count(d, e, mid) > k) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Eigenvector for a converged eigenvalue by inverse iteration (Thomas solver).
std::vector<double> eigenvector(const std::vector<double>& d, double e, double lambda) {
  const std::size_t n = d.size();
  double shift = lambda + 1e-10 * std::max(1.0, std::abs(lambda));
  std::vector<double> x(n, 1.0), c(n), y(n);
  for (int iter = 0; iter < 3; ++iter) {
    double denom = d[0] - shift;
    c[0] = e / denom;
    y[0] = x[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
      denom = d[i] - shift - e * c[i - 1];
      if (denom == 0.0) denom = 1e-300;
      c[i] = e / denom;
      y[i] = (x[i] - e * y[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) y[i] -= c[i] * y[i + 1];
    double norm = 0.0;
    for (double v : y) norm = std::max(norm, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
  }
  return x;
}

struct Problem {
  std::vector<double> diag;
  double off;
};

Problem uniform_problem(const std::function<double(double)>& V, double a, double h, std::size_t n) {
  Problem p{std::vector<double>(n), -0.5 / (h * h)};
  for (std::size_t i = 0; i < n; ++i) p.diag[i] = 1.0 / (h * h) + V(a + static_cast<double>(i + 1) * h);
  return p;
}

std::vector<double> lowest(const Problem& p, std::size_t k, bool check_edges, bool far_edge_only,
                           const std::string& what) {
  std::vector<double> out;
  for (std::size_t j = 0; j < k; ++j) {
    double lam = tridiagonal_eigenvalue(p.diag, p.off, j);
    if (check_edges) {
      auto vec = eigenvector(p.diag, p.off, lam);
      double edge = far_edge_only ? std::abs(vec.back()) : std::max(std::abs(vec.front()), std::abs(vec.back()));
      if (edge > 1e-8) {
        std::ostringstream msg;
        msg << what << ": eigenfunction " << j << " has relative edge amplitude " << edge;
        throw DomainTooSmall(msg.str());
      }
    }
    out.push_back(lam);
  }
  return out;
}

EigenResult richardson(const std::function<double(double)>& V, double a, double b, std::size_t n, std::size_t k,
                       bool radial_edge_only, const std::string& what) {
  EigenResult res;
  res.a = a;
  res.b = b;
  res.points = n;
  double h = (b - a) / static_cast<double>(n + 1);
  auto coarse = uniform_problem(V, a, h, n);
  auto fine = uniform_problem(V, a, h / 2, 2 * n + 1);
  res.coarse = lowest(coarse, k, false, radial_edge_only, what);
  res.fine = lowest(fine, k, true, radial_edge_only, what);
  for (std::size_t j = 0; j < k; ++j) {
    res.eigenvalues.push_back((4.0 * res.fine[j] - res.coarse[j]) / 3.0);
    double est = std::abs(res.fine[j] - res.coarse[j]) / 3.0;
    res.convergence.push_back(std::max(est, std::numeric_limits<double>::epsilon() * std::abs(res.fine[j])));
  }
  return res;
}

}  // namespace

EigenResult solve_1d(const std::function<double(double)>& potential, double a, double b, std::size_t n,
                     std::size_t k) {
  if (n < 200) throw ConfigError("oracle needs at least 200 points");
  if (!(b > a)) throw ConfigError("oracle domain must have b > a");
  if (k < 1 || k > n / 4) throw ConfigError("oracle eigenvalue count out of range");
  return richardson(potential, a, b, n, k, false, "solve_1d");
}

EigenResult solve_radial(double g, const std::function<double(double)>& U, double eps, double r_max,
                         std::size_t n) {
  if (n < 200) throw ConfigError("oracle needs at least 200 points");
  if (!(g > 0) || !(r_max > 0)) throw ConfigError("radial oracle needs g > 0 and r_max > 0");
  auto V = [&](double r) { return -g * g / r + eps * U(r); };
  return richardson(V, 0.0, r_max, n, 1, true, "solve_radial");
}

void write_csv(std::ostream& os, const EigenResult& res) {
  os << "a,b,points,k,eigenvalue,error_estimate\n" << std::setprecision(17);
  for (std::size_t j = 0; j < res.eigenvalues.size(); ++j)
    os << res.a << ',' << res.b << ',' << res.points << ',' << j << ',' << res.eigenvalues[j] << ','
       << res.convergence[j] << '\n';
}

}  // namespace trajquad

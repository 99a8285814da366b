#include "trajquad/gexpand.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "trajquad/errors.hpp"
#include "trajquad/numerics.hpp"

namespace trajquad {

namespace {

constexpr std::size_t kGhost = 20;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// The integrand is 0/0 at index c and its finite values next to c carry
// roundoff divided by the small S_0'. Nodes within `radius` of c are replaced
// by a least-squares polynomial through the next 12 nodes on each side.
void repair_origin(std::vector<double>& f, std::size_t c, double h, std::size_t radius, int k) {
  constexpr int kSpan = 12;
  std::vector<double> xs, ys, lx, ly, rx, ry;
  for (int j = static_cast<int>(radius) + 1; j <= static_cast<int>(radius) + kSpan; ++j)
    for (int side : {-1, 1}) {
      double x = side * j * h, y = f[static_cast<std::size_t>(static_cast<long>(c) + side * j)];
      xs.push_back(x);
      ys.push_back(y);
      (side < 0 ? lx : rx).push_back(x);
      (side < 0 ? ly : ry).push_back(y);
    }
  auto eval = [](const std::vector<double>& coef, double x) {
    double acc = 0.0;
    for (std::size_t i = coef.size(); i-- > 0;) acc = acc * x + coef[i];
    return acc;
  };
  auto both = num::polyfit(xs, ys, 9);
  // one-sided fits must agree at the origin when the limit exists
  double left = eval(num::polyfit(lx, ly, 5), 0.0), right = eval(num::polyfit(rx, ry, 5), 0.0);
  double scale = 1.0;
  for (double y : ys) scale = std::max(scale, std::abs(y));
  if (!std::isfinite(left + right) || std::abs(left - right) > 1e-4 * scale) {
    std::ostringstream msg;
    msg << "integrand for S_" << k << " has no finite limit at the origin (left " << left << ", right " << right
        << ")";
    throw HierarchyBreakdown(msg.str());
  }
  for (long j = -static_cast<long>(radius); j <= static_cast<long>(radius); ++j)
    f[static_cast<std::size_t>(static_cast<long>(c) + j)] = eval(both, static_cast<double>(j) * h);
}

// Below about 0.006 harmonic lengths the repeated differencing is roundoff
// bound, so finer grids are worked on every stride-th node.
std::size_t work_stride(const TrajectoryGrid& grid) {
  const double ell = 1.0 / std::sqrt(grid.lap_s0.front());
  return static_cast<std::size_t>(std::max(1.0, std::ceil(0.006 * ell / grid.spacing - 1e-9)));
}

SeriesSolution solve_uniform(const TrajectoryGrid& grid, int order);

}  // namespace

double e0(const TrajectoryGrid& grid) { return 0.5 * grid.lap_s0.front(); }

SeriesSolution hierarchy(const TrajectoryGrid& grid, int order) {
  if (order < 0 || order > 3) throw ConfigError("numeric hierarchy order must be in 0..3");
  const std::size_t stride = work_stride(grid);
  if (stride == 1 || order == 0) return solve_uniform(grid, order);

  const std::size_t m = grid.first_kink();
  TrajectoryGrid coarse;
  for (std::size_t i = 0; i < m; i += stride) {
    coarse.nodes.push_back(grid.nodes[i]);
    coarse.s0.push_back(grid.s0[i]);
    coarse.grad2.push_back(grid.grad2[i]);
    coarse.lap_s0.push_back(grid.lap_s0[i]);
    coarse.time.push_back(grid.time[i]);
  }
  coarse.direction = grid.direction;
  coarse.spacing = grid.spacing * static_cast<double>(stride);
  coarse.potential = grid.potential;
  SeriesSolution c = solve_uniform(coarse, order);

  SeriesSolution sol;
  sol.order = order;
  sol.e_terms = c.e_terms;
  const std::size_t nc = coarse.size();
  constexpr std::size_t kWidth = 8;
  if (nc < kWidth) throw HierarchyBreakdown("too few smooth nodes before the first kink");
  for (int k = 1; k <= order; ++k) {
    const auto& sc = c.s(k);
    std::vector<double> fine(grid.size(), kNaN);
    for (std::size_t i = 0; i < m; ++i) {
      if (i % stride == 0) {
        fine[i] = sc[i / stride];
        continue;
      }
      std::size_t lo = i / stride + 1 >= kWidth / 2 ? i / stride + 1 - kWidth / 2 : 0;
      lo = std::min(lo, nc - kWidth);
      std::vector<double> xs, ys;
      for (std::size_t j = lo; j < lo + kWidth; ++j) {
        xs.push_back(static_cast<double>(j * stride));
        ys.push_back(sc[j]);
      }
      fine[i] = num::neville(xs, ys, static_cast<double>(i));
    }
    sol.s_terms.push_back(std::move(fine));
  }
  return sol;
}

namespace {

SeriesSolution solve_uniform(const TrajectoryGrid& grid, int order) {
  SeriesSolution sol;
  sol.order = order;
  sol.e_terms.push_back(e0(grid));
  if (order == 0) return sol;

  const std::size_t m = grid.first_kink();
  const double h = grid.spacing;
  // repair radius: about a twentieth of the harmonic length
  const double ell = 1.0 / std::sqrt(grid.lap_s0.front());
  const auto radius = static_cast<std::size_t>(std::max(0L, std::lround(0.05 * ell / h) - 1));
  const std::size_t ghost = std::max(kGhost, radius + 16);
  if (m < ghost) throw HierarchyBreakdown("too few smooth nodes before the first kink");
  const std::size_t n = ghost + m, c = ghost;
  const Potential1D& pot = *grid.potential;

  std::vector<double> p0(n), lap(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j >= c) {
      p0[j] = std::sqrt(grid.grad2[j - c]);
      lap[j] = grid.lap_s0[j - c];
      continue;
    }
    double x = grid.origin() - grid.direction * static_cast<double>(c - j) * h;
    double v = pot.v(x);
    if (!(v > 0)) throw HierarchyBreakdown("potential vanishes within the ghost band behind the origin");
    p0[j] = -std::sqrt(2.0 * v);
    lap[j] = -grid.direction * pot.dv(x) / std::sqrt(2.0 * v);
  }

  std::vector<std::vector<double>> sp;   // S_k' for k = 1..
  std::vector<std::vector<double>> spp;  // S_k''
  std::vector<double> bracket(n);
  for (std::size_t j = 0; j < n; ++j) bracket[j] = 0.5 * lap[j];

  for (int k = 1; k <= order; ++k) {
    double e_prev = sol.e_terms.back();
    std::vector<double> integrand(n);
    for (std::size_t j = 0; j < n; ++j)
      if (j != c) integrand[j] = (bracket[j] - e_prev) / p0[j];
    repair_origin(integrand, c, h, radius, k);

    auto s = num::cumulative_integral(integrand, h, c);
    sol.s_terms.emplace_back(grid.size(), kNaN);
    std::copy(s.begin() + static_cast<long>(c), s.end(), sol.s_terms.back().begin());
    sol.s_terms.back()[0] = 0.0;

    spp.push_back(num::derivative(integrand, h, 1));
    sp.push_back(std::move(integrand));

    // bracket for the next order: (1/2)[S_k'' - sum_{a+b=k+1} S_a' S_b']
    for (std::size_t j = 0; j < n; ++j) {
      double q = 0.0;
      for (int a = 1; a <= k; ++a) q += sp[static_cast<std::size_t>(a - 1)][j] * sp[static_cast<std::size_t>(k - a)][j];
      bracket[j] = 0.5 * (spp.back()[j] - q);
    }
    sol.e_terms.push_back(bracket[c]);
  }
  return sol;
}

}  // namespace

double assemble_energy(const SeriesSolution& sol, double g) {
  double e = 0.0;
  for (std::size_t k = 0; k < sol.e_terms.size(); ++k) {
    double power = sol.grading == Grading::inverse_g ? 1.0 - static_cast<double>(k) : 4.0 - 2.0 * static_cast<double>(k);
    if (sol.e_terms[k] != 0.0) e += std::pow(g, power) * sol.e_terms[k];
  }
  return e;
}

std::vector<double> pde_residual(const TrajectoryGrid& grid, const SeriesSolution& sol, int k) {
  if (k < 1 || k > sol.order) throw ConfigError("residual order out of range");
  const std::size_t m = grid.first_kink(), stride = work_stride(grid);
  const double h = grid.spacing * static_cast<double>(stride);
  std::vector<double> out(m, 0.0);
  // each residue class mod stride is its own uniform grid
  for (std::size_t r = 0; r < stride; ++r) {
    std::vector<std::size_t> idx;
    for (std::size_t i = r; i < m; i += stride) idx.push_back(i);
    if (idx.size() < 10) continue;
    std::vector<std::vector<double>> d1, d2;
    for (int a = 1; a <= k; ++a) {
      std::vector<double> s;
      for (auto i : idx) s.push_back(sol.s(a)[i]);
      d1.push_back(num::derivative(s, h, 1));
      d2.push_back(num::derivative(s, h, 2));
    }
    for (std::size_t t = 0; t < idx.size(); ++t) {
      const std::size_t i = idx[t];
      if (i == 0 || i + 1 >= m) continue;
      double prev2 = k == 1 ? grid.lap_s0[i] : d2[static_cast<std::size_t>(k - 2)][t];
      double q = 0.0;
      for (int a = 1; a < k; ++a) q += d1[static_cast<std::size_t>(a - 1)][t] * d1[static_cast<std::size_t>(k - a - 1)][t];
      double rhs = 0.5 * (prev2 - q) - sol.e_terms[static_cast<std::size_t>(k - 1)];
      out[i] = std::sqrt(grid.grad2[i]) * d1[static_cast<std::size_t>(k - 1)][t] - rhs;
    }
  }
  return out;
}

SeparableSolution hierarchy(const SeparableBundle& bundle, int order) {
  SeparableSolution out;
  out.e_terms.assign(static_cast<std::size_t>(order) + 1, 0.0);
  for (const auto& axis : bundle.axes) {
    out.axes.push_back(hierarchy(axis, order));
    for (std::size_t k = 0; k < out.e_terms.size(); ++k) out.e_terms[k] += out.axes.back().e_terms[k];
  }
  return out;
}

double e0(const SeparableBundle& bundle) {
  double e = 0.0;
  for (const auto& axis : bundle.axes) e += e0(axis);
  return e;
}

void write_energies_csv(std::ostream& os, const SeriesSolution& sol) {
  os << "k,E_k\n" << std::setprecision(17);
  for (std::size_t k = 0; k < sol.e_terms.size(); ++k) os << k << ',' << sol.e_terms[k] << '\n';
}

void write_terms_csv(std::ostream& os, const TrajectoryGrid& grid, const SeriesSolution& sol) {
  os << "x";
  for (int k = 1; k <= sol.order; ++k) os << ",S_" << k;
  os << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << grid.nodes[i];
    for (int k = 1; k <= sol.order; ++k) os << ',' << sol.s(k)[i];
    os << '\n';
  }
}

}  // namespace trajquad

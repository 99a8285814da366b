#include "trajquad/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include "trajquad/errors.hpp"
#include "trajquad/numerics.hpp"

namespace trajquad {

Potential1D Potential1D::polynomial(const MultiPoly& p, double origin) {
  for (auto& v : p.variables())
    if (v != sym::x && p.has_variable(v))
      throw VariableMismatch("potential must be a polynomial in x, found " + v);
  MultiPoly d1 = differentiate(p, sym::x), d2 = differentiate(d1, sym::x);
  Potential1D out;
  out.v = [p](double x) { return p.evaluate({{sym::x, x}}); };
  out.dv = [d1](double x) { return d1.evaluate({{sym::x, x}}); };
  out.d2v = [d2](double x) { return d2.evaluate({{sym::x, x}}); };
  out.origin = origin;
  out.poly = p;
  return out;
}

Potential1D Potential1D::evaluator(std::function<double(double)> v, std::function<double(double)> dv,
                                   std::function<double(double)> d2v, double origin) {
  return Potential1D{std::move(v), std::move(dv), std::move(d2v), origin, std::nullopt};
}

namespace {

double bisect_root(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200 && std::abs(b - a) > 4 * std::numeric_limits<double>::epsilon() * (1 + std::abs(a));
       ++it) {
    double m = 0.5 * (a + b), fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TrajectoryGrid build_grid(const Potential1D& pot, double x_max, std::size_t n, int direction,
                          const GridOptions& opts) {
  if (n < 16) throw ConfigError("trajectory grid needs at least 16 nodes");
  if (!(x_max > 0)) throw ConfigError("trajectory extent must be positive");
  if (direction != 1 && direction != -1) throw ConfigError("direction must be +1 or -1");
  const double o = pot.origin;
  const double vscale = std::max(1.0, std::abs(pot.v(o + direction * x_max)));
  if (std::abs(pot.v(o)) > 1e-12 * vscale)
    throw InvalidPotential("v(origin) = " + std::to_string(pot.v(o)) + " is not zero");
  const double curv = pot.d2v(o);
  if (!(curv > 0)) throw DegenerateMinimum("v''(origin) = " + std::to_string(curv) + " is not positive");

  TrajectoryGrid g;
  g.direction = direction;
  g.spacing = x_max / static_cast<double>(n - 1);
  g.potential = std::make_shared<Potential1D>(pot);
  g.nodes.resize(n);
  g.grad2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.nodes[i] = o + direction * static_cast<double>(i) * g.spacing;
    double v = i == 0 ? 0.0 : pot.v(g.nodes[i]);
    if (v < -1e-13 * vscale)
      throw InvalidPotential("v(" + std::to_string(g.nodes[i]) + ") = " + std::to_string(v) + " < 0");
    g.grad2[i] = 2.0 * std::max(v, 0.0);
  }
  double gmax = *std::max_element(g.grad2.begin(), g.grad2.end());

  // Kinks: the slope along the path turns from negative to non-negative while v
  // returns to zero.
  auto slope = [&](double x) { return direction * pot.dv(x); };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double si = slope(g.nodes[i]), sj = slope(g.nodes[i + 1]);
    if (!(si < 0 && sj >= 0)) continue;
    double xk = sj == 0 ? g.nodes[i + 1] : bisect_root(slope, g.nodes[i], g.nodes[i + 1]);
    double vk = pot.v(xk);
    if (vk < -1e-13 * vscale) throw InvalidPotential("v dips below zero near " + std::to_string(xk));
    if (2.0 * vk > 1e-12 * std::max(1.0, gmax)) continue;
    g.kink_positions.push_back(xk);
    std::size_t near = std::abs(xk - g.nodes[i]) <= std::abs(xk - g.nodes[i + 1]) ? i : i + 1;
    g.kinks.push_back(near);
  }

  auto speed = [&](double x) { return std::sqrt(2.0 * std::max(pot.v(x), 0.0)); };
  auto panel = [&](const std::function<double(double)>& f, double a, double b) {
    if (opts.rule == PanelRule::simpson) return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    return num::gauss_kronrod(f, a, b, opts.panel_tolerance);
  };

  g.s0.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double a = g.nodes[i - 1], b = g.nodes[i];
    double lo = std::min(a, b), hi = std::max(a, b);
    double acc = 0.0, start = lo;
    for (double xk : g.kink_positions)
      if (xk > lo && xk < hi) {
        acc += panel(speed, start, xk);
        start = xk;
      }
    acc += panel(speed, start, hi);
    g.s0[i] = g.s0[i - 1] + acc;
  }

  g.lap_s0.resize(n);
  g.lap_s0[0] = std::sqrt(curv);
  for (std::size_t i = 1; i < n; ++i)
    g.lap_s0[i] = g.grad2[i] > 0 ? direction * pot.dv(g.nodes[i]) / std::sqrt(g.grad2[i]) : 0.0;

  // Time diverges logarithmically at the origin; the origin is placed one
  // harmonic doubling time before the first node.
  g.time.assign(n, std::numeric_limits<double>::infinity());
  g.time[0] = 0.0;
  g.time[1] = std::log(2.0) / std::sqrt(curv);
  auto inv_speed = [&](double x) { return 1.0 / speed(x); };
  const std::size_t stop = g.first_kink();
  for (std::size_t i = 2; i < stop; ++i)
    g.time[i] = g.time[i - 1] + panel(inv_speed, std::min(g.nodes[i - 1], g.nodes[i]),
                                      std::max(g.nodes[i - 1], g.nodes[i]));
  return g;
}

void write_csv(std::ostream& os, const TrajectoryGrid& g) {
  os << "x,s0,grad2,lap_s0,time\n" << std::setprecision(17);
  for (std::size_t i = 0; i < g.size(); ++i)
    os << g.nodes[i] << ',' << g.s0[i] << ',' << g.grad2[i] << ',' << g.lap_s0[i] << ',' << g.time[i] << '\n';
}

SeparableBundle separable_compose(std::vector<TrajectoryGrid> axes) {
  if (axes.empty()) throw ConfigError("separable bundle needs at least one axis");
  return SeparableBundle{std::move(axes)};
}

}  // namespace trajquad

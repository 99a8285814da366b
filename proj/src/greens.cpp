#include "trajquad/greens.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "trajquad/errors.hpp"
#include "trajquad/numerics.hpp"

namespace trajquad {

std::size_t WaveProfile::origin_index() const {
  auto it = std::min_element(nodes.begin(), nodes.end(),
                             [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (it == nodes.end() || std::abs(*it) > 1e-12 * (1 + std::abs(nodes.back())))
    throw ConfigError("profile grid must contain x = 0");
  return static_cast<std::size_t>(it - nodes.begin());
}

double default_half_width(double g) { return std::max(6.0 / std::sqrt(g), 6.0); }

WaveProfile make_profile(double L, std::size_t n, const std::function<double(double)>& S,
                         const std::function<double(double)>& f) {
  if (n < 17 || n % 2 == 0) throw ConfigError("profile grid needs an odd point count >= 17");
  if (!(L > 0)) throw ConfigError("profile half-width must be positive");
  WaveProfile p;
  const double h = 2.0 * L / static_cast<double>(n - 1);
  const long mid = static_cast<long>(n / 2);
  for (std::size_t i = 0; i < n; ++i) {
    double x = static_cast<double>(static_cast<long>(i) - mid) * h;
    p.nodes.push_back(x);
    p.s.push_back(S(x));
    p.values.push_back(f(x));
  }
  return p;
}

namespace {

std::vector<double> slope(const WaveProfile& p) { return num::derivative(p.s, p.spacing(), 1); }

}  // namespace

WaveProfile apply_C(const WaveProfile& f, double g) {
  const std::size_t c = f.origin_index(), n = f.size();
  const double h = f.spacing();
  auto sp = slope(f);
  double fmax = 0.0;
  for (double v : f.values) fmax = std::max(fmax, std::abs(v));
  if (fmax == 0.0) return f.with_values(std::vector<double>(n, 0.0));
  if (std::abs(f.values[c]) > 1e-9 * fmax)
    throw DivergentAtOrigin("f(0) = " + std::to_string(f.values[c]) + " makes C diverge at the origin");
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i)
    if (i != c) q[i] = f.values[i] / sp[i];
  // removable limit at the origin from four neighbours on each side
  if (c < 4 || c + 4 >= n) throw ConfigError("origin too close to the grid edge");
  std::vector<double> xs, ys;
  for (long j = -4; j <= 4; ++j) {
    if (j == 0) continue;
    xs.push_back(static_cast<double>(j) * h);
    ys.push_back(q[static_cast<std::size_t>(static_cast<long>(c) + j)]);
  }
  q[c] = num::neville(xs, ys, 0.0);
  auto out = num::cumulative_integral(q, h, c);
  for (double& v : out) v /= g;
  return f.with_values(std::move(out));
}

WaveProfile apply_Dbar(const WaveProfile& f, double g, DbarMode mode) {
  const std::size_t c = f.origin_index(), n = f.size();
  const double h = f.spacing();
  std::vector<double> w(n);
  double wmax = 0.0, wabs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(-2.0 * g * f.s[i]) * f.values[i];
    wmax = std::max(wmax, std::abs(w[i]));
  }
  if (wmax == 0.0) return f.with_values(std::vector<double>(n, 0.0));
  if (std::abs(w.front()) > 1e-10 * wmax || std::abs(w.back()) > 1e-10 * wmax || !std::isfinite(wmax))
    throw TailDivergence("e^{-2gS} f does not decay at the grid ends");
  std::vector<double> aw(n);
  for (std::size_t i = 0; i < n; ++i) aw[i] = std::abs(w[i]);
  wabs = num::integrate(aw, h);

  auto from_left = num::cumulative_integral(w, h, 0);
  const double total = from_left.back();
  std::vector<double> inner = from_left;
  if (mode == DbarMode::automatic && std::abs(total) <= 1e-10 * wabs) {
    // balanced: the inner integral for x > 0 is minus the right tail
    auto from_right = num::cumulative_integral(w, h, n - 1);
    for (std::size_t i = c + 1; i < n; ++i) inner[i] = from_right[i];
  }
  std::vector<double> outer(n);
  for (std::size_t i = 0; i < n; ++i) outer[i] = std::exp(2.0 * g * f.s[i]) * inner[i];
  auto out = num::cumulative_integral(outer, h, c);
  for (double& v : out) v *= -2.0;
  return f.with_values(std::move(out));
}

WaveProfile apply_T(const WaveProfile& f) {
  auto d2 = num::derivative(f.values, f.spacing(), 2);
  for (double& v : d2) v *= -0.5;
  return f.with_values(std::move(d2));
}

WaveProfile irregular_solution(const std::vector<double>& nodes, const std::vector<double>& s, double g) {
  WaveProfile p{nodes, s, std::vector<double>(nodes.size(), 0.0)};
  const std::size_t c = p.origin_index();
  std::vector<double> e(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) e[i] = std::exp(2.0 * g * s[i]);
  auto acc = num::cumulative_integral(e, p.spacing(), c);
  for (std::size_t i = 0; i < nodes.size(); ++i) p.values[i] = std::exp(-g * s[i]) * acc[i];
  return p;
}

double dkernel_wronskian(const WaveProfile& F, double g, std::size_t i, std::size_t j) {
  if (F.nodes[i] < F.nodes[j]) return 0.0;
  return 2.0 * (std::exp(-g * F.s[i]) * F.values[j] - F.values[i] * std::exp(-g * F.s[j]));
}

double shift_from_boundary(const WaveProfile& U, const WaveProfile& tau, double g) {
  const std::size_t n = U.size();
  if (tau.size() != n) throw ConfigError("shift profiles must share a grid");
  std::vector<double> num(n), den(n);
  for (std::size_t i = 0; i < n; ++i) {
    double w = std::exp(-2.0 * g * U.s[i] - tau.values[i]);
    num[i] = w * U.values[i];
    den[i] = w;
  }
  double d = num::integrate(den, U.spacing());
  if (!(std::abs(d) > 0) || !std::isfinite(d)) throw DegenerateProfile("normalisation integral vanishes");
  return num::integrate(num, U.spacing()) / d;
}

MultiPoly hermite(int l) {
  if (l < 0) throw ConfigError("Hermite index must be non-negative");
  MultiPoly x = MultiPoly::variable(sym::x), prev(1), cur = MultiPoly(2) * x;
  if (l == 0) return prev;
  for (int k = 1; k < l; ++k) {
    MultiPoly next = MultiPoly(2) * x * cur - MultiPoly(2 * k) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double hermite_value(int l, double z) {
  if (l == 0) return 1.0;
  double prev = 1.0, cur = 2.0 * z;
  for (int k = 1; k < l; ++k) {
    double next = 2.0 * z * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<bool> check_region(const WaveProfile& p, double g, double margin) {
  std::vector<bool> in(p.size());
  const double edge = std::min(p.s.front(), p.s.back());
  for (std::size_t i = 0; i < p.size(); ++i) in[i] = 2.0 * g * (edge - p.s[i]) >= margin;
  return in;
}

namespace {

// |a - b| / max(1, |scale|) over the check region, skipping stencil-width
// borders.
double discrepancy(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& scale,
                   const std::vector<bool>& region) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!region[i]) continue;
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(scale[i])));
  }
  return worst;
}

}  // namespace

std::vector<IdentityReport> run_identity_checks(double g, double L, std::size_t n) {
  std::vector<IdentityReport> out;
  const double sg = std::sqrt(g);
  auto S = [](double x) { return 0.5 * x * x; };
  auto zero = make_profile(L, n, S, [](double) { return 0.0; });
  const auto region = check_region(zero, g);
  const std::vector<double> ones(n, 1.0);
  auto report = [&](std::string name, double resid, double tol) {
    out.push_back(IdentityReport{std::move(name), n, resid, tol});
  };

  for (int l = 1; l <= 4; ++l) {
    auto f = make_profile(L, n, S, [&](double x) { return hermite_value(l, sg * x); });
    auto d = apply_Dbar(f, g);
    std::vector<double> expect(n);
    for (std::size_t i = 0; i < n; ++i)
      expect[i] = (hermite_value(l, sg * f.nodes[i]) - hermite_value(l, 0.0)) / (l * g);
    report("Dbar H_" + std::to_string(l) + " = (H_l - H_l(0))/(l g)", discrepancy(d.values, expect, ones, region),
           1e-7);
  }

  {
    auto f = make_profile(L, n, S, [&](double x) { return x * x - 0.5 / g; });
    auto d = apply_Dbar(f, g);
    std::vector<double> expect(n);
    for (std::size_t i = 0; i < n; ++i) {
      // (2n)!/(4g)^n (1/g) Σ_l [(H_2l(ξ) - H_2l(0)) / ((n-l)! (2l)! 2l)] at n = 1
      double xi = sg * f.nodes[i];
      expect[i] = 2.0 / (4.0 * g) / g * (hermite_value(2, xi) - hermite_value(2, 0.0)) / (1.0 * 2.0 * 2.0);
    }
    report("Dbar (x^2 - Gamma_11) = Hermite sum", discrepancy(d.values, expect, ones, region), 1e-7);
  }

  struct Named {
    std::string name;
    std::function<double(double)> f;
  };
  std::vector<Named> fs = {{"x^2", [](double x) { return x * x; }},
                           {"x^3", [](double x) { return x * x * x; }},
                           {"H_3", [&](double x) { return hermite_value(3, sg * x); }}};
  for (const auto& [name, fn] : fs) {
    auto f = make_profile(L, n, S, fn);
    auto d = apply_Dbar(f, g);
    auto ctd = apply_C(apply_T(d), g);
    auto cf = apply_C(f, g);
    std::vector<double> lhs(n);
    for (std::size_t i = 0; i < n; ++i) lhs[i] = d.values[i] + ctd.values[i];
    report("(1 + C T) Dbar f = C f, f = " + name, discrepancy(lhs, cf.values, d.values, region), 1e-6);

    // (T + V - E) e^{-gS} Dbar f = e^{-gS} f with V - E = g^2 x^2/2 - g/2
    std::vector<double> psi(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] = std::exp(-g * f.s[i]) * d.values[i];
      rhs[i] = std::exp(-g * f.s[i]) * f.values[i];
    }
    auto tpsi = apply_T(f.with_values(psi));
    std::vector<double> green(n);
    for (std::size_t i = 0; i < n; ++i) {
      double x = f.nodes[i];
      green[i] = tpsi.values[i] + (0.5 * g * g * x * x - 0.5 * g) * psi[i];
    }
    report("(T + V - E) e^{-gS} Dbar f = e^{-gS} f, f = " + name, discrepancy(green, rhs, psi, region), 1e-5);
  }

  {
    auto f = make_profile(L, n, S, [](double x) { return x * x * x * x; });
    auto cf = apply_C(f, g);
    std::vector<double> expect(n);
    for (std::size_t i = 0; i < n; ++i) expect[i] = std::pow(f.nodes[i], 4) / (4.0 * g);
    std::vector<bool> all(n, true);
    report("C x^4 = x^4/(4g)", discrepancy(cf.values, expect, expect, all), 1e-8);

    auto dc = num::derivative(cf.values, f.spacing(), 1);
    auto sp = num::derivative(f.s, f.spacing(), 1);
    std::vector<double> lhs(n);
    for (std::size_t i = 0; i < n; ++i) lhs[i] = g * sp[i] * dc[i];
    report("g S' (C f)' = f, f = x^4", discrepancy(lhs, f.values, f.values, all), 1e-6);

    auto tau = f.with_values(std::vector<double>(n, 0.0));
    double delta = shift_from_boundary(f, tau, g);
    report("shift for U = x^4 equals 3/(4 g^2)", std::abs(delta - 0.75 / (g * g)), 1e-7);
  }

  {
    auto F = irregular_solution(zero.nodes, zero.s, g);
    auto tF = apply_T(F);
    double fmax = 0.0, worst = 0.0;
    for (double v : F.values) fmax = std::max(fmax, std::abs(v));
    for (std::size_t i = 8; i + 8 < n; ++i) {
      double x = F.nodes[i];
      worst = std::max(worst, std::abs(tF.values[i] + (0.5 * g * g * x * x - 0.5 * g) * F.values[i]));
    }
    report("irregular solution residual / max|F|", worst / fmax, 1e-6);

    const std::size_t c = F.origin_index();
    double werr = 0.0;
    for (long a : {-300L, -50L, 0L, 120L, 400L})
      for (long b : {-450L, -200L, -10L, 60L, 250L}) {
        std::size_t i = c + static_cast<std::size_t>(a * static_cast<long>(n) / 4001),
                    j = c + static_cast<std::size_t>(b * static_cast<long>(n) / 4001);
        if (F.nodes[i] < F.nodes[j]) continue;
        double xi = F.nodes[i], xj = F.nodes[j];
        double direct = -2.0 * std::exp(-g * S(xi)) * std::exp(-g * S(xj)) *
                        num::gauss_kronrod([&](double y) { return std::exp(2.0 * g * S(y)); }, xj, xi, 1e-15);
        werr = std::max(werr, std::abs(dkernel_wronskian(F, g, i, j) - direct) / std::max(1.0, std::abs(direct)));
      }
    report("Wronskian form of D against direct quadrature", werr, 1e-6);
  }
  return out;
}

std::string to_json(const std::vector<IdentityReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports)
    arr.push_back({{"identity", r.identity},
                   {"grid_size", r.grid_size},
                   {"max_residual", r.max_residual},
                   {"tolerance", r.tolerance},
                   {"passed", r.passed()}});
  return arr.dump(2);
}

}  // namespace trajquad

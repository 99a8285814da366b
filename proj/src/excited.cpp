#include "trajquad/excited.hpp"

#include <cmath>
#include <limits>

#include "trajquad/errors.hpp"
#include "trajquad/numerics.hpp"

namespace trajquad {

void ExcitedSpec::validate() const {
  if (freqs.empty()) throw ConfigError("excited spec needs at least one mode");
  if (freqs.size() != occupation.size())
    throw ConfigError("excited spec: " + std::to_string(freqs.size()) + " frequencies but " +
                      std::to_string(occupation.size()) + " occupations");
  bool any = false;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (freqs[i] <= Rational(0)) throw ConfigError("frequencies must be positive");
    if (occupation[i] < 0) throw ConfigError("occupations must be non-negative");
    any = any || occupation[i] > 0;
  }
  if (!any) throw ConfigError("all occupations zero: that is the ground state");
}

std::string ExcitedSpec::symbol(std::size_t i) const {
  return freqs.size() == 1 ? sym::x : sym::q(static_cast<int>(i) + 1);
}

ExcitedLeading chi0_e0(const ExcitedSpec& spec) {
  spec.validate();
  std::vector<std::pair<std::string, int>> powers;
  Rational e0(0);
  for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
    powers.emplace_back(spec.symbol(i), spec.occupation[i]);
    e0 += Rational(spec.occupation[i]) * spec.freqs[i];
  }
  return {MultiPoly::monomial(Rational(1), powers), e0};
}

MultiPoly chi1_harmonic(const ExcitedSpec& spec) {
  spec.validate();
  MultiPoly out;
  for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
    const int ni = spec.occupation[i];
    if (ni < 2) continue;
    std::vector<std::pair<std::string, int>> powers;
    for (std::size_t j = 0; j < spec.freqs.size(); ++j)
      powers.emplace_back(spec.symbol(j), spec.occupation[j] - (j == i ? 2 : 0));
    Rational c = -Rational(ni * (ni - 1)) / (Rational(4) * spec.freqs[i]);
    out += MultiPoly::monomial(c, powers);
  }
  return out;
}

MultiPoly chi0_residual(const ExcitedSpec& spec) {
  auto [chi0, e0] = chi0_e0(spec);
  MultiPoly res = -(MultiPoly(e0) * chi0);
  for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
    const auto s = spec.symbol(i);
    res += MultiPoly(spec.freqs[i]) * MultiPoly::variable(s) * differentiate(chi0, s);
  }
  return res;
}

std::vector<std::vector<int>> degenerate_multiplet(const ExcitedSpec& spec) {
  const Rational target = chi0_e0(spec).e0;
  const std::size_t d = spec.freqs.size();
  double combos = 1.0;
  for (const auto& f : spec.freqs) combos *= std::floor((target / f).to_double()) + 1.0;
  if (combos > 1e7) throw ConfigError("degeneracy search space too large");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(d, 0);
  auto rec = [&](auto&& self, std::size_t i, const Rational& left) -> void {
    if (i == d) {
      if (left == Rational(0)) out.push_back(cur);
      return;
    }
    for (int k = 0; Rational(k) * spec.freqs[i] <= left; ++k) {
      cur[i] = k;
      self(self, i + 1, left - Rational(k) * spec.freqs[i]);
    }
    cur[i] = 0;
  };
  rec(rec, 0, target);
  return out;
}

double excited_e1_numeric(const TrajectoryGrid& grid, const std::vector<double>& s1, int n, const E1Options& opts) {
  if (n < 1) throw ConfigError("excited occupation must be >= 1");
  if (s1.size() != grid.size()) throw ConfigError("S1 samples do not match the grid");
  std::size_t usable = grid.first_kink();
  for (std::size_t i = 0; i < usable; ++i)
    if (!std::isfinite(s1[i])) usable = i;
  if (usable < 2 * opts.min_points) throw ExtractionFailure("too few smooth nodes before the first kink");

  const double h = grid.spacing, nu = grid.lap_s0[0];
  const std::vector<double> head(s1.begin(), s1.begin() + static_cast<long>(usable));
  auto ds1 = num::derivative(head, h, 1);
  const double nn = n * nu;
  // t³Q/S0' with t the distance from the origin; every factor is reflection
  // invariant. Its t² coefficient is the residue that would put a log in χ1.
  std::vector<double> t(usable), t2q(usable);
  for (std::size_t i = 1; i < usable; ++i) {
    t[i] = static_cast<double>(i) * h;
    double g2 = grid.grad2[i];
    double q = 0.5 * (nn * nn - nn * grid.lap_s0[i]) / g2 - nn * ds1[i] / std::sqrt(g2);
    t2q[i] = t[i] * t[i] * t[i] * q / std::sqrt(g2);
  }

  double tmin = opts.start_window > 0 ? opts.start_window : t[usable - 1] / 8.0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (;;) {
    std::vector<double> xs, ys;
    for (std::size_t i = 1; i < usable; ++i)
      if (t[i] >= tmin && t[i] <= 4.0 * tmin) {
        xs.push_back(t[i]);
        ys.push_back(t2q[i]);
      }
    if (xs.size() < opts.min_points)
      throw ExtractionFailure("b0 fit did not settle to " + std::to_string(opts.agreement) +
                              " before the window ran out of nodes (last estimate " + std::to_string(-prev) + ")");
    double b0 = nu * num::polyfit(xs, ys, 4)[2];
    if (std::abs(b0 - prev) <= opts.agreement) return -b0;
    prev = b0;
    tmin *= 0.5;
  }
}

}  // namespace trajquad

#include "trajquad/oscpert.hpp"

#include <cmath>
#include <stdexcept>

#include "trajquad/errors.hpp"

namespace trajquad {

MultiPoly gamma_even(int m, int n) {
  if (m <= 0 || n <= 0 || m > n) return MultiPoly();
  Rational c(1);
  for (int j = m + 1; j <= n; ++j) c *= Rational(2 * j - 1);
  c /= Rational(m) * Rational(2).pow(n - m + 1);
  return MultiPoly::monomial(c, {{sym::ghat, n - m + 1}});
}

MultiPoly gamma_odd(int m, int n) {
  if (m < 0 || n < 0 || m > n) return MultiPoly();
  Rational c(1);
  for (int j = m + 1; j <= n; ++j) c *= Rational(j);
  c /= Rational(2 * m + 1);
  return MultiPoly::monomial(c, {{sym::ghat, n - m + 1}});
}

GammaTable::GammaTable(Parity kind, int max_index) : kind_(kind), max_(max_index) {
  for (int n = 0; n <= max_index; ++n)
    for (int m = 0; m <= n; ++m) {
      MultiPoly e = kind == Parity::even ? gamma_even(m, n) : gamma_odd(m, n);
      if (!e.is_zero()) entries_.emplace(std::make_pair(m, n), std::move(e));
    }
}

const MultiPoly& GammaTable::operator()(int m, int n) const {
  if (n > max_) throw std::out_of_range("gamma table index beyond the prebuilt range");
  auto it = entries_.find({m, n});
  return it == entries_.end() ? zero_ : it->second;
}

std::vector<double> PerturbSeries::delta_values(double g) const {
  std::vector<double> out;
  for (const auto& d : delta) out.push_back(d.evaluate({{sym::ghat, 1.0 / g}}));
  return out;
}

double PerturbSeries::shift(double g, double eps) const {
  double acc = 0.0;
  auto vals = delta_values(g);
  for (std::size_t k = 0; k < vals.size(); ++k) acc += std::pow(eps, static_cast<double>(k + 1)) * vals[k];
  return acc;
}

namespace {

using Coeffs = std::vector<std::vector<MultiPoly>>;  // [order k][index], order 0 included

const MultiPoly& at(const Coeffs& c, int k, int n) {
  static const MultiPoly zero;
  if (k < 0 || static_cast<std::size_t>(k) >= c.size()) return zero;
  if (n < 0 || static_cast<std::size_t>(n) >= c[static_cast<std::size_t>(k)].size()) return zero;
  return c[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
}

void require_zero(const MultiPoly& p, const char* what, int k, int n) {
  if (!p.is_zero())
    throw std::logic_error(std::string(what) + " support bound violated at order " + std::to_string(k) +
                           ", index " + std::to_string(n) + ": " + p.to_string());
}

}  // namespace

PerturbSeries solve_even(int p, int order) {
  if (p < 1) throw ConfigError("even perturbation needs p >= 1");
  if (order < 0) throw ConfigError("order must be non-negative");
  PerturbSeries out;
  out.parity = Parity::even;
  out.p = p;
  out.order = order;
  GammaTable G(Parity::even, order * p + 2);
  Coeffs a(1);  // order 0 carries no a_n
  for (int k = 1; k <= order; ++k) {
    const int top = k * p;
    std::vector<MultiPoly> row(static_cast<std::size_t>(top) + 2);
    for (int n = 1; n <= top + 1; ++n) {
      MultiPoly v;
      if (k == 1) v -= G(n, p);
      for (int l = 1; l <= (k - 1) * p; ++l) {
        const auto& prev = at(a, k - 1, l);
        if (!prev.is_zero()) v -= prev * G(n, l + p);
      }
      for (int j = 1; j < k; ++j) {
        MultiPoly inner;
        for (int l = 1; l <= (k - j) * p; ++l) {
          const auto& c = at(a, k - j, l);
          if (!c.is_zero()) inner += c * G(n, l);
        }
        if (!inner.is_zero()) v += out.delta[static_cast<std::size_t>(j - 1)] * inner;
      }
      row[static_cast<std::size_t>(n)] = std::move(v);
    }
    require_zero(row.back(), "even series", k, top + 1);
    row.pop_back();
    out.delta.push_back(-row[1]);
    a.push_back(row);
    out.coeffs.push_back(std::move(row));
  }
  return out;
}

PerturbSeries solve_odd(int p, int order) {
  if (p < 0) throw ConfigError("odd perturbation needs p >= 0");
  if (order < 0) throw ConfigError("order must be non-negative");
  PerturbSeries out;
  out.parity = Parity::odd;
  out.p = p;
  out.order = order;
  const int deg = 2 * p + 1;
  GammaTable Gm(Parity::even, order * deg + 4), gm(Parity::odd, order * deg + 4);
  Coeffs b(1, std::vector<MultiPoly>{MultiPoly(1)});  // b_0 = 1 at order 0
  for (int k = 1; k <= order; ++k) {
    const int top = k * deg;
    std::vector<MultiPoly> row(static_cast<std::size_t>(top) + 3);
    const int prev_top = (k - 1) * deg;
    for (int m = 1; m <= top + 2; ++m) {
      MultiPoly v;
      if (m % 2 == 0) {
        const int n = m / 2;
        for (int l = 0; 2 * l + 1 <= prev_top; ++l) {
          const auto& c = at(b, k - 1, 2 * l + 1);
          if (!c.is_zero()) v -= c * Gm(n, l + p + 1);
        }
        for (int j = 1; j < k; ++j) {
          MultiPoly inner;
          for (int l = 1; 2 * l <= (k - j) * deg; ++l) {
            const auto& c = at(b, k - j, 2 * l);
            if (!c.is_zero()) inner += c * Gm(n, l);
          }
          if (!inner.is_zero()) v += out.delta[static_cast<std::size_t>(j - 1)] * inner;
        }
      } else {
        const int n = (m - 1) / 2;
        if (k == 1) v -= gm(n, p);
        for (int l = 1; 2 * l <= prev_top; ++l) {
          const auto& c = at(b, k - 1, 2 * l);
          if (!c.is_zero()) v -= c * gm(n, l + p);
        }
        for (int j = 1; j < k; ++j) {
          MultiPoly inner;
          for (int l = 0; 2 * l + 1 <= (k - j) * deg; ++l) {
            const auto& c = at(b, k - j, 2 * l + 1);
            if (!c.is_zero()) inner += c * gm(n, l);
          }
          if (!inner.is_zero()) v += out.delta[static_cast<std::size_t>(j - 1)] * inner;
        }
      }
      row[static_cast<std::size_t>(m)] = std::move(v);
    }
    require_zero(row[static_cast<std::size_t>(top + 1)], "odd series", k, top + 1);
    require_zero(row[static_cast<std::size_t>(top + 2)], "odd series", k, top + 2);
    row.resize(static_cast<std::size_t>(top) + 1);
    // each order flips the parity of the surviving powers
    for (int m = 0; m <= top; ++m)
      if ((m - k) % 2 != 0) require_zero(row[static_cast<std::size_t>(m)], "odd series parity", k, m);
    out.delta.push_back(-row[2]);
    if (k % 2 == 1) require_zero(out.delta.back(), "odd series Δ parity", k, 2);
    b.push_back(row);
    out.coeffs.push_back(std::move(row));
  }
  return out;
}

}  // namespace trajquad

#pragma once

#include <map>
#include <utility>
#include <vector>

#include "trajquad/multipoly.hpp"

namespace trajquad {

enum class Parity { even, odd };

// Entries of the even (capital gamma) or odd (lower-case gamma) tables as
// rational multiples of ĝ^(n-m+1).
MultiPoly gamma_even(int m, int n);
MultiPoly gamma_odd(int m, int n);

class GammaTable {
 public:
  GammaTable(Parity kind, int max_index);
  Parity kind() const { return kind_; }
  int max_index() const { return max_; }
  // Zero outside the stored range.
  const MultiPoly& operator()(int m, int n) const;

 private:
  Parity kind_;
  int max_;
  std::map<std::pair<int, int>, MultiPoly> entries_;
  MultiPoly zero_;
};

struct PerturbSeries {
  Parity parity = Parity::even;
  int p = 0;
  int order = 0;
  // delta[k-1] = Δ(k), the ε^(k-1) coefficient of Δ, so that εΔ = Σ ε^k Δ(k).
  std::vector<MultiPoly> delta;
  // coeffs[k-1][n] = a_n(k) (even) or b_n(k) (odd): coefficient of ε^k x^(2n) or ε^k x^n.
  std::vector<std::vector<MultiPoly>> coeffs;

  // Δ(k) evaluated at g, for k = 1..order.
  std::vector<double> delta_values(double g) const;
  // ε Σ_k ε^(k-1) Δ(k) at the given g and ε.
  double shift(double g, double eps) const;
};

// x^(2p) perturbation of the harmonic ground state.
PerturbSeries solve_even(int p, int order);
// x^(2p+1) perturbation.
PerturbSeries solve_odd(int p, int order);

}  // namespace trajquad

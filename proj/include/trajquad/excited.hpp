#pragma once

#include <vector>

#include "trajquad/multipoly.hpp"
#include "trajquad/rational.hpp"
#include "trajquad/trajectory.hpp"

namespace trajquad {

// Harmonic frequencies ν_i and occupations n_i. One mode uses x, several use q1..qN.
struct ExcitedSpec {
  std::vector<Rational> freqs;
  std::vector<int> occupation;

  void validate() const;
  std::string symbol(std::size_t i) const;
};

struct ExcitedLeading {
  MultiPoly chi0;
  Rational e0;
};

ExcitedLeading chi0_e0(const ExcitedSpec& spec);

// First correction for S0 = Σ ν_i q_i²/2; E1 is zero there.
MultiPoly chi1_harmonic(const ExcitedSpec& spec);

// ∇S0·∇χ0 - E0 χ0 for the harmonic S0; identically zero.
MultiPoly chi0_residual(const ExcitedSpec& spec);

// Every occupation with the same Σ n_i ν_i as `spec`, including spec itself.
std::vector<std::vector<int>> degenerate_multiplet(const ExcitedSpec& spec);

struct E1Options {
  double start_window = 0.0;  // initial x_min; 0 picks an eighth of the usable extent
  double agreement = 1e-6;
  std::size_t min_points = 10;
};

// E1 from Q = (1/χ0)(χ0''/2 - S1' χ0') near the origin: E1 + Q must leave no
// residue in (E1 + Q)/S0', else χ1 picks up a log. For n = 1 this is E1 = -Q(0).
// s1 holds S1 at the grid nodes; needs a grid fine enough that the window
// [x_min, 4 x_min] can shrink to a few spacings.
double excited_e1_numeric(const TrajectoryGrid& grid, const std::vector<double>& s1, int n,
                          const E1Options& opts = {});

}  // namespace trajquad

#pragma once

#include <ostream>
#include <vector>

#include "trajquad/trajectory.hpp"

namespace trajquad {

enum class Grading { inverse_g, coulomb };

struct SeriesSolution {
  std::vector<std::vector<double>> s_terms;  // s_terms[k-1] holds S_k per node, k = 1..order
  std::vector<double> e_terms;               // E_0..E_order
  int order = 0;
  Grading grading = Grading::inverse_g;

  const std::vector<double>& s(int k) const { return s_terms.at(static_cast<std::size_t>(k - 1)); }
};

double e0(const TrajectoryGrid& grid);

// S_1..S_order and E_0..E_order along the grid. Nodes at and beyond the first
// kink carry NaN.
SeriesSolution hierarchy(const TrajectoryGrid& grid, int order);

// gE_0 + E_1 + E_2/g + ...
double assemble_energy(const SeriesSolution& sol, double g);

// S_0' S_k' - RHS_k at every node before the first kink, with all derivatives
// recomputed from the stored values.
std::vector<double> pde_residual(const TrajectoryGrid& grid, const SeriesSolution& sol, int k);

struct SeparableSolution {
  std::vector<SeriesSolution> axes;
  std::vector<double> e_terms;  // per-order sums over axes
};

SeparableSolution hierarchy(const SeparableBundle& bundle, int order);
double e0(const SeparableBundle& bundle);

void write_energies_csv(std::ostream& os, const SeriesSolution& sol);
void write_terms_csv(std::ostream& os, const TrajectoryGrid& grid, const SeriesSolution& sol);

}  // namespace trajquad

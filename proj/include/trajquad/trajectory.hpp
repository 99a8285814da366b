#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "trajquad/multipoly.hpp"

namespace trajquad {

// v(x) >= 0 with a quadratic zero at `origin`.
struct Potential1D {
  std::function<double(double)> v;
  std::function<double(double)> dv;
  std::function<double(double)> d2v;
  double origin = 0.0;
  std::optional<MultiPoly> poly;  // set when built from a polynomial in x

  static Potential1D polynomial(const MultiPoly& p, double origin = 0.0);
  static Potential1D evaluator(std::function<double(double)> v, std::function<double(double)> dv,
                               std::function<double(double)> d2v, double origin = 0.0);
};

enum class PanelRule { adaptive, simpson };

struct GridOptions {
  double panel_tolerance = 1e-12;
  PanelRule rule = PanelRule::adaptive;  // simpson exists for convergence-order checks
};

struct TrajectoryGrid {
  std::vector<double> nodes;   // ordered away from the origin; nodes[0] is the origin
  std::vector<double> s0;
  std::vector<double> grad2;   // (S0')^2 = 2v
  std::vector<double> lap_s0;  // S0''
  std::vector<double> time;    // +inf from the first kink on
  std::vector<std::size_t> kinks;
  std::vector<double> kink_positions;
  int direction = 1;
  double spacing = 0.0;
  std::shared_ptr<const Potential1D> potential;

  std::size_t size() const { return nodes.size(); }
  double origin() const { return nodes.front(); }
  // Index of the first kink, or size() when the trajectory is smooth.
  std::size_t first_kink() const { return kinks.empty() ? nodes.size() : kinks.front(); }
};

TrajectoryGrid build_grid(const Potential1D& v, double x_max, std::size_t n, int direction,
                          const GridOptions& opts = {});

void write_csv(std::ostream& os, const TrajectoryGrid& grid);

struct SeparableBundle {
  std::vector<TrajectoryGrid> axes;
};

SeparableBundle separable_compose(std::vector<TrajectoryGrid> axes);

}  // namespace trajquad

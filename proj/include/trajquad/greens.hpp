#pragma once

#include <functional>
#include <string>
#include <vector>

#include "trajquad/multipoly.hpp"

namespace trajquad {

// Uniformly sampled function on a grid that contains x = 0. `s` holds the
// exponent S(x) (not multiplied by g).
struct WaveProfile {
  std::vector<double> nodes;
  std::vector<double> s;
  std::vector<double> values;

  std::size_t size() const { return nodes.size(); }
  double spacing() const { return nodes[1] - nodes[0]; }
  std::size_t origin_index() const;
  WaveProfile with_values(std::vector<double> v) const { return WaveProfile{nodes, s, std::move(v)}; }
};

// Symmetric grid [-L, L] with n points (n odd so that 0 is a node).
WaveProfile make_profile(double L, std::size_t n, const std::function<double(double)>& S,
                         const std::function<double(double)>& f);
// Default half-width max(6/sqrt(g), 6).
double default_half_width(double g);

WaveProfile apply_C(const WaveProfile& f, double g);

enum class DbarMode {
  automatic,  // two-sided when the weighted integral of f vanishes
  left,       // inner integral always accumulated from the left end
};
WaveProfile apply_Dbar(const WaveProfile& f, double g, DbarMode mode = DbarMode::automatic);

// T = -1/2 d^2/dx^2 by finite differences.
WaveProfile apply_T(const WaveProfile& f);

// F(x) = e^{-gS(x)} ∫_0^x e^{2gS(y)} dy.
WaveProfile irregular_solution(const std::vector<double>& nodes, const std::vector<double>& s, double g);

// D(x_i, x_j) for x_i >= x_j in Wronskian form 2[e^{-gS_i} F_j - F_i e^{-gS_j}].
double dkernel_wronskian(const WaveProfile& F, double g, std::size_t i, std::size_t j);

// ∫e^{-2gS-τ}U / ∫e^{-2gS-τ}; U.values is U, tau.values is τ.
double shift_from_boundary(const WaveProfile& U, const WaveProfile& tau, double g);

// Physicists' Hermite polynomial H_l as a polynomial in x with integer coefficients.
MultiPoly hermite(int l);
double hermite_value(int l, double z);

// Nodes where truncating the line at ±L perturbs D̄ by less than e^{-margin}.
std::vector<bool> check_region(const WaveProfile& p, double g, double margin = 40.0);

struct IdentityReport {
  std::string identity;
  std::size_t grid_size = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_residual <= tolerance; }
};

// The harmonic identity battery at coupling g on [-L, L] with n points.
std::vector<IdentityReport> run_identity_checks(double g, double L, std::size_t n);
std::string to_json(const std::vector<IdentityReport>& reports);

}  // namespace trajquad

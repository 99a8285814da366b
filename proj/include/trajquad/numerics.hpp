#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace trajquad::num {

// Adaptive 7/15-point Gauss-Kronrod; bisects until each panel's error estimate
// is below abs_tol scaled by the panel's share of [a, b].
double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double abs_tol,
                     int max_depth = 40);

// Weights for the m-th derivative at z from values at nodes xs (Fornberg).
std::vector<double> fd_weights(double z, std::span<const double> xs, int m);

// m-th derivative of uniformly sampled data using width-point stencils,
// centred where possible and shifted near the ends.
std::vector<double> derivative(std::span<const double> f, double h, int m, int width = 9);

// F[i] = integral of f from node `anchor` to node i on a uniform grid, using
// piecewise interpolants through `width` neighbouring nodes.
std::vector<double> cumulative_integral(std::span<const double> f, double h, std::size_t anchor,
                                        int width = 8);

// Integral over the whole uniform grid.
double integrate(std::span<const double> f, double h, int width = 8);

// Polynomial interpolation through (xs, ys) evaluated at x.
double neville(std::span<const double> xs, std::span<const double> ys, double x);

// Least-squares polynomial fit of given degree; returns ascending coefficients.
std::vector<double> polyfit(std::span<const double> xs, std::span<const double> ys, int degree);

}  // namespace trajquad::num

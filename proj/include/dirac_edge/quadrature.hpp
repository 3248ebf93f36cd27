#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace dirac_edge {

/// Running integral I_k = ∫_{t_0}^{t_k} f on a uniform grid of spacing h.
/// Composite Simpson for even k, Simpson plus a 3/8 panel for odd k >= 3,
/// and the quadratic-interpolant rule on [t_0, t_1] for k = 1. Every entry
/// is fourth-order accurate.
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

/// Fourth-order first derivative of uniformly sampled data. Interior points
/// use the five-point centered stencil, the two points at each end use
/// one-sided five-point stencils. Requires at least 5 samples.
std::vector<double> derivative_4th(std::span<const double> f, double h);

/// Five-point first-derivative stencil for sample i of n (n >= 5): the
/// derivative is sum_m w[m] f[start + m] / h.
struct Stencil5 {
  std::size_t start = 0;
  std::array<double, 5> w{};
};
Stencil5 derivative_stencil(std::size_t i, std::size_t n);

/// Trapezoid sum times spacing.
double trapezoid(std::span<const double> f, double h);

}  // namespace dirac_edge

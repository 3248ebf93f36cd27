#include "dirac_edge/quadrature.hpp"

#include <stdexcept>

namespace dirac_edge {

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n == 2) {
    out[1] = 0.5 * h * (f[0] + f[1]);
    return out;
  }
  out[1] = h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0;

  // even prefix sums
  for (std::size_t k = 2; k < n; k += 2) {
    out[k] = out[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
  }
  for (std::size_t k = 3; k < n; k += 2) {
    out[k] = out[k - 3] + 3.0 * h / 8.0 * (f[k - 3] + 3.0 * f[k - 2] + 3.0 * f[k - 1] + f[k]);
  }
  return out;
}

std::vector<double> derivative_4th(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw std::invalid_argument("derivative_4th: need at least 5 samples");
  std::vector<double> d(n);
  const double s = 1.0 / (12.0 * h);
  for (std::size_t k = 2; k + 2 < n; ++k) {
    d[k] = s * (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]);
  }
  d[0] = s * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = s * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  d[n - 1] = s * (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]);
  d[n - 2] = s * (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]);
  return d;
}

Stencil5 derivative_stencil(std::size_t i, std::size_t n) {
  if (n < 5 || i >= n) throw std::invalid_argument("derivative_stencil: need i < n and n >= 5");
  constexpr double t = 1.0 / 12.0;
  if (i == 0) return {0, {-25 * t, 48 * t, -36 * t, 16 * t, -3 * t}};
  if (i == 1) return {0, {-3 * t, -10 * t, 18 * t, -6 * t, 1 * t}};
  if (i == n - 1) return {n - 5, {3 * t, -16 * t, 36 * t, -48 * t, 25 * t}};
  if (i == n - 2) return {n - 5, {-1 * t, 6 * t, -18 * t, 10 * t, 3 * t}};
  return {i - 2, {1 * t, -8 * t, 0.0, 8 * t, -1 * t}};
}

double trapezoid(std::span<const double> f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t k = 1; k + 1 < f.size(); ++k) s += f[k];
  return s * h;
}

}  // namespace dirac_edge

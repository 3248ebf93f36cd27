#include "dirac_edge/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "dirac_edge/error.hpp"


namespace dirac_edge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double unwrap_next(const std::vector<double>& series, double raw) {
  if (std::isnan(raw)) return kNaN;
  for (auto it = series.rbegin(); it != series.rend(); ++it) {
    if (std::isnan(*it)) continue;
    double d = raw - *it;
    d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
    return *it + d;
  }
  return raw;
}

double phase_or_nan(const SpinorGrid& g, int component) {
  try {
    return phase_at_center(g, component);
  } catch (const std::domain_error&) {
    return kNaN;
  }
}

std::size_t nearest_index(double v, double origin, double h, std::size_t n) {
  const double pos = std::round((v - origin) / h);
  if (pos <= 0.0) return 0;
  if (pos >= static_cast<double>(n - 1)) return n - 1;
  return static_cast<std::size_t>(pos);
}

}  // namespace

void ObservableSeries::append(const SpinorGrid& g, double l2_error_vs_reference) {
  if (!t.empty() && !(g.t > t.back())) throw std::invalid_argument("ObservableSeries: time must increase");
  t.push_back(g.t);
  com.push_back(center_of_mass(g));
  max_amp.push_back(max_amplitude(g));
  phase1.push_back(unwrap_next(phase1, phase_or_nan(g, 0)));
  phase2.push_back(unwrap_next(phase2, phase_or_nan(g, 1)));
  l2_norm.push_back(g.l2_norm());
  l2_err.push_back(l2_error_vs_reference);
}

double ObservableSeries::speed_at(std::size_t k) const {
  if (k == 0 || k >= t.size()) return 0.0;
  return norm(com[k] - com[k - 1]) / (t[k] - t[k - 1]);
}

Vec2 center_of_mass(const SpinorGrid& g) {
  const GridParams& p = g.grid;
  double m = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t j = 0; j < p.ny; ++j) {
    double row = 0.0, row_x = 0.0;
    for (std::size_t i = 0; i < p.nx; ++i) {
      const std::size_t k = g.index(i, j);
      const double w = std::norm(g.psi1[k]) + std::norm(g.psi2[k]);
      row += w;
      row_x += w * p.x(i);
    }
    m += row;
    mx += row_x;
    my += row * p.y(j);
  }
  if (!(m > 0.0)) throw std::domain_error("center_of_mass: zero field");
  return {mx / m, my / m};
}

double max_amplitude(const SpinorGrid& g) {
  double m = 0.0;
  for (std::size_t k = 0; k < g.psi1.size(); ++k) m = std::max(m, std::norm(g.psi1[k]) + std::norm(g.psi2[k]));
  return std::sqrt(m);
}

double phase_at_center(const SpinorGrid& g, int component) {
  if (component != 0 && component != 1) throw std::invalid_argument("phase_at_center: component must be 0 or 1");
  const Vec2 c = center_of_mass(g);
  const GridParams& p = g.grid;
  const std::size_t i = nearest_index(c.x, p.x0, p.hx(), p.nx);
  const std::size_t j = nearest_index(c.y, p.y0, p.hy(), p.ny);
  const std::complex<double> v = component == 0 ? g.psi1[g.index(i, j)] : g.psi2[g.index(i, j)];
  if (std::abs(v) < 1e-8) throw std::domain_error("phase_at_center: amplitude below 1e-8 at the center");
  return std::arg(v);
}

double l2_error(const SpinorGrid& a, const SpinorGrid& b) {
  if (!same_grid(a.grid, b.grid)) throw GridMismatch("l2_error: grids differ");
  double s = 0.0;
  for (std::size_t k = 0; k < a.psi1.size(); ++k) {
    s += std::norm(a.psi1[k] - b.psi1[k]) + std::norm(a.psi2[k] - b.psi2[k]);
  }
  return std::sqrt(s * a.cell_area());
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares_slope: need matching samples");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("least_squares_slope: degenerate abscissa");
  return sxy / sxx;
}

double speed_estimate(const ObservableSeries& series, double t_lo, double t_hi) {
  std::vector<double> ts, arc;
  double s = 0.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (k > 0) s += norm(series.com[k] - series.com[k - 1]);
    if (series.t[k] >= t_lo && series.t[k] <= t_hi) {
      ts.push_back(series.t[k]);
      arc.push_back(s);
    }
  }
  if (ts.size() < 5) {
    throw std::invalid_argument("speed_estimate: " + std::to_string(ts.size()) + " samples in window, need 5");
  }
  return least_squares_slope(ts, arc);
}

double fit_power_law(std::span<const double> abscissa, std::span<const double> values, double lo, double hi) {
  if (abscissa.size() != values.size()) throw std::invalid_argument("fit_power_law: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(abscissa[k] >= lo && abscissa[k] <= hi)) continue;
    if (!(values[k] > 0.0) || !(abscissa[k] > 0.0)) {
      throw std::domain_error("fit_power_law: nonpositive value in window");
    }
    lx.push_back(std::log(abscissa[k]));
    ly.push_back(std::log(values[k]));
  }
  if (lx.size() < 8) {
    throw std::invalid_argument("fit_power_law: " + std::to_string(lx.size()) + " points in window, need 8");
  }
  return least_squares_slope(lx, ly);
}

void write_observables_csv(std::ostream& os, const ObservableSeries& s) {
  os << "t,com_x,com_y,speed,max_amp,center_phase_unwrapped,l2_norm,l2_err_vs_asymptotic\n";
  char buf[512];
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t[k], s.com[k].x,
                  s.com[k].y, s.speed_at(k), s.max_amp[k], s.phase1[k], s.l2_norm[k], s.l2_err[k]);
    os << buf;
  }
}

}  // namespace dirac_edge

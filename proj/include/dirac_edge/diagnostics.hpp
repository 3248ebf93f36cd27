#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "dirac_edge/spinor_grid.hpp"
#include "dirac_edge/vec2.hpp"

namespace dirac_edge {

/// Time series of observables. Phases are unwrapped as samples arrive;
/// samples without a defined phase hold NaN and do not reset the unwrapping.
struct ObservableSeries {
  std::vector<double> t;
  std::vector<Vec2> com;
  std::vector<double> max_amp;
  std::vector<double> phase1;  // unwrapped arg ψ₁ at the node nearest the COM
  std::vector<double> phase2;
  std::vector<double> l2_norm;
  std::vector<double> l2_err;  // NaN without a reference

  std::size_t size() const { return t.size(); }
  /// Appends one sample; throws std::invalid_argument unless t increases.
  void append(const SpinorGrid& g, double l2_error_vs_reference);
  /// Speed as |ΔCOM|/Δt from the previous sample (0 for the first).
  double speed_at(std::size_t k) const;
};

/// ∫x|Ψ|² / ∫|Ψ|². Throws std::domain_error for a zero field.
Vec2 center_of_mass(const SpinorGrid& g);

/// max over nodes of the spinor modulus |Ψ|.
double max_amplitude(const SpinorGrid& g);

/// arg Ψ_component (0 or 1) at the node nearest the COM. Throws
/// std::domain_error when the modulus there is below 1e-8.
double phase_at_center(const SpinorGrid& g, int component);

/// Cell-weighted ‖a − b‖. Throws GridMismatch for different grids.
double l2_error(const SpinorGrid& a, const SpinorGrid& b);

/// Least-squares slope of COM arc length against t over samples with
/// t ∈ [t_lo, t_hi]. Needs at least 5 samples in the window.
double speed_estimate(const ObservableSeries& series, double t_lo, double t_hi);

/// Least-squares slope of log(value) against log(abscissa) over samples with
/// abscissa ∈ [lo, hi]. Needs at least 8 such points, all values positive.
double fit_power_law(std::span<const double> abscissa, std::span<const double> values, double lo, double hi);

/// Plain least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

/// t,com_x,com_y,speed,max_amp,center_phase_unwrapped,l2_norm,l2_err_vs_asymptotic
void write_observables_csv(std::ostream& os, const ObservableSeries& series);

}  // namespace dirac_edge

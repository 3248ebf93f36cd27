#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "dirac_edge/aligned.hpp"
#include "dirac_edge/diagnostics.hpp"
#include "dirac_edge/fft.hpp"
#include "dirac_edge/geometry.hpp"
#include "dirac_edge/magnetic_potential.hpp"
#include "dirac_edge/spinor_grid.hpp"

namespace dirac_edge {

/// C∞ step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u);

/// Plateau window on [a, b): 1 at distance >= width from both ends, rolling
/// smoothly to 0 at the ends.
double plateau_window(double x, double a, double b, double width);

struct SolverOptions {
  /// 0 selects min(0.2 ε/|v|max, 0.2 ε h/π).
  double dt = 0.0;
  /// Roll-off width of the boundary window as a fraction of each extent.
  double window_fraction = 0.1;
  /// Relative mass inside the roll-off that aborts a run.
  double contamination_tolerance = 1e-6;
};

/// Strang-split spectral stepper for (εD_t + D̸)Ψ = 0 on a periodic grid,
/// D̸ = (εD₁ − A₁)σ₁ + (εD₂ − A₂)σ₂ + κσ₃ with A and κ multiplied by the
/// boundary window.
class DiracSolver {
 public:
  DiracSolver(const DomainWall& wall, const MagneticPotential& field, double epsilon, const GridParams& grid,
              SolverOptions opt = {});

  double epsilon() const { return epsilon_; }
  double dt() const { return dt_; }
  double time() const { return state_.t; }
  const GridParams& grid() const { return grid_; }
  const SpinorGrid& state() const { return state_; }
  /// max over the grid of |(−A₁, −A₂, κ)| after windowing.
  double potential_max() const { return v_max_; }
  /// dt·|v|max/ε > π/4.
  bool cfl_warning() const { return cfl_warning_; }
  static double default_dt(double epsilon, double v_max, double h);

  void set_time(double t) { state_.t = t; }

  /// Replaces the state; throws GridMismatch when the grids differ.
  void set_state(const SpinorGrid& psi);

  /// One potential-kinetic-potential step.
  void step();
  /// n steps with the interior potential half-steps fused.
  void advance(std::size_t n);

  /// Mass fraction in the boundary roll-off region.
  double boundary_mass_fraction() const;
  /// Throws BoundaryContamination when boundary_mass_fraction exceeds the tolerance.
  void check_boundary() const;

 private:
  void apply_potential(bool half);
  void apply_kinetic();

  GridParams grid_;
  double epsilon_;
  double dt_;
  double v_max_ = 0.0;
  bool cfl_warning_ = false;
  SolverOptions opt_;
  SpinorGrid state_;
  std::unique_ptr<Fft2d> fft_;
  AlignedVector<std::complex<double>> kin_alpha_, kin_beta_;
  AlignedVector<std::complex<double>> half_alpha_, half_beta_;
  AlignedVector<std::complex<double>> full_alpha_, full_beta_;
  std::vector<unsigned char> rolloff_;  // 1 where the window is below 1
};

using Observer = std::function<void(const SpinorGrid&)>;
using ReferenceField = std::function<SpinorGrid(double t)>;

/// Advances to t_max, recording observables at t = 0 and every `cadence`
/// (a whole number of steps), calling observers at the same times.
/// Throws BoundaryContamination when mass reaches the roll-off region.
ObservableSeries evolve(DiracSolver& solver, double t_max, double cadence, const std::vector<Observer>& observers = {},
                        const ReferenceField& reference = {});

}  // namespace dirac_edge

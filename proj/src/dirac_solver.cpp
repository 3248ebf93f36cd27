#include "dirac_edge/dirac_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dirac_edge/error.hpp"
#include "dirac_edge/kernels.hpp"
#include "dirac_edge/parallel.hpp"

namespace dirac_edge {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// exp(−i a v·σ) stored as (α, β), U = [[α, β], [−β*, α*]], times `scale`.
void su2_exponential(double a, double v1, double v2, double v3, double scale, cplx& alpha, cplx& beta) {
  const double len = std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
  if (len == 0.0) {
    alpha = scale;
    beta = 0.0;
    return;
  }
  const double c = std::cos(a * len);
  const double s = std::sin(a * len) / len;
  alpha = scale * cplx{c, -s * v3};
  beta = scale * cplx{-s * v2, -s * v1};
}

// Signed FFT-order wavenumbers, keeping the Nyquist mode at −π/h.
std::vector<double> propagator_wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n);
  for (std::size_t m = 0; m < n; ++m) {
    const auto mm = static_cast<long long>(m);
    const long long sm = m < (n + 1) / 2 ? mm : mm - static_cast<long long>(n);
    k[m] = 2.0 * kPi * static_cast<double>(sm) / length;
  }
  return k;
}

std::size_t whole_steps(double span, double dt, const char* what) {
  const double ratio = span / dt;
  const double r = std::round(ratio);
  if (std::abs(ratio - r) > 1e-6 * std::max(1.0, r)) {
    throw std::invalid_argument(std::string("evolve: ") + what + " is not a whole number of steps");
  }
  return static_cast<std::size_t>(r);
}

}  // namespace

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

double plateau_window(double x, double a, double b, double width) {
  return smooth_step((x - a) / width) * smooth_step((b - x) / width);
}

double DiracSolver::default_dt(double epsilon, double v_max, double h) {
  const double by_potential = v_max > 0.0 ? 0.2 * epsilon / v_max : std::numeric_limits<double>::infinity();
  return std::min(by_potential, 0.2 * epsilon * h / kPi);
}

DiracSolver::DiracSolver(const DomainWall& wall, const MagneticPotential& field, double epsilon,
                         const GridParams& grid, SolverOptions opt)
    : grid_(grid), epsilon_(epsilon), dt_(opt.dt), opt_(opt), state_(grid, 0.0, epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("DiracSolver: epsilon must be positive");
  if (grid.nx < 4 || grid.ny < 4) throw std::invalid_argument("DiracSolver: grid too small");
  if (!(opt.window_fraction > 0.0 && opt.window_fraction < 0.5)) {
    throw std::invalid_argument("DiracSolver: window_fraction must lie in (0, 0.5)");
  }
  const std::size_t n = grid.size();
  const double wx = opt.window_fraction * (grid.x1 - grid.x0);
  const double wy = opt.window_fraction * (grid.y1 - grid.y0);

  // windowed potential vector V = w·(−A₁, −A₂, κ)
  std::vector<double> v1(n), v2(n), v3(n);
  rolloff_.assign(n, 0);
  std::vector<double> row_max(grid.ny, 0.0);
  parallel_for(grid.ny, [&](std::size_t jb, std::size_t je) {
    for (std::size_t j = jb; j < je; ++j) {
      const double y = grid.y(j);
      const double wyv = plateau_window(y, grid.y0, grid.y1, wy);
      for (std::size_t i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        const double w = plateau_window(x, grid.x0, grid.x1, wx) * wyv;
        const std::size_t k = j * grid.nx + i;
        rolloff_[k] = w < 1.0 ? 1 : 0;
        if (w == 0.0) continue;
        const Vec2 p{x, y};
        const Vec2 a = potential(field, p);
        const double kap = wall.kappa(p);
        if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(kap)) {
          throw InvalidWall("DiracSolver: non-finite potential or mass at (" + std::to_string(x) + ", " +
                            std::to_string(y) + ")");
        }
        v1[k] = -w * a.x;
        v2[k] = -w * a.y;
        v3[k] = w * kap;
        row_max[j] = std::max(row_max[j], std::sqrt(v1[k] * v1[k] + v2[k] * v2[k] + v3[k] * v3[k]));
      }
    }
  });
  for (double m : row_max) v_max_ = std::max(v_max_, m);

  if (dt_ <= 0.0) dt_ = default_dt(epsilon, v_max_, std::min(grid.hx(), grid.hy()));
  cfl_warning_ = dt_ * v_max_ / epsilon > kPi / 4.0;
  if (cfl_warning_) {
    std::cerr << "warning: dt*|v|max/eps = " << dt_ * v_max_ / epsilon
              << " exceeds pi/4; potential phases are under-resolved\n";
  }

  half_alpha_.resize(n);
  half_beta_.resize(n);
  full_alpha_.resize(n);
  full_beta_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    su2_exponential(0.5 * dt_ / epsilon, v1[k], v2[k], v3[k], 1.0, half_alpha_[k], half_beta_[k]);
    su2_exponential(dt_ / epsilon, v1[k], v2[k], v3[k], 1.0, full_alpha_[k], full_beta_[k]);
  }

  // kinetic symbol εk/ε = k; the 1/N of the inverse transform rides along
  const std::vector<double> kx = propagator_wavenumbers(grid.nx, grid.x1 - grid.x0);
  const std::vector<double> ky = propagator_wavenumbers(grid.ny, grid.y1 - grid.y0);
  const double inv_n = 1.0 / static_cast<double>(n);
  kin_alpha_.resize(n);
  kin_beta_.resize(n);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const std::size_t k = j * grid.nx + i;
      su2_exponential(dt_, kx[i], ky[j], 0.0, inv_n, kin_alpha_[k], kin_beta_[k]);
    }
  }
  fft_ = std::make_unique<Fft2d>(grid.nx, grid.ny);
}

void DiracSolver::set_state(const SpinorGrid& psi) {
  if (!same_grid(psi.grid, grid_)) throw GridMismatch("DiracSolver::set_state: grid differs from the solver grid");
  state_ = psi;
  state_.epsilon = epsilon_;
}

void DiracSolver::apply_potential(bool half) {
  const auto& a = half ? half_alpha_ : full_alpha_;
  const auto& b = half ? half_beta_ : full_beta_;
  const std::size_t nx = grid_.nx;
  parallel_for(grid_.ny, [&](std::size_t jb, std::size_t je) {
    const std::size_t off = jb * nx;
    kernels::apply_su2(a.data() + off, b.data() + off, state_.psi1.data() + off, state_.psi2.data() + off,
                       (je - jb) * nx);
  });
}

void DiracSolver::apply_kinetic() {
  fft_->forward(state_.psi1.data());
  fft_->forward(state_.psi2.data());
  const std::size_t nx = grid_.nx;
  parallel_for(grid_.ny, [&](std::size_t jb, std::size_t je) {
    const std::size_t off = jb * nx;
    kernels::apply_su2(kin_alpha_.data() + off, kin_beta_.data() + off, state_.psi1.data() + off,
                       state_.psi2.data() + off, (je - jb) * nx);
  });
  fft_->inverse(state_.psi1.data());
  fft_->inverse(state_.psi2.data());
}

void DiracSolver::step() { advance(1); }

void DiracSolver::advance(std::size_t n) {
  if (n == 0) return;
  apply_potential(true);
  for (std::size_t k = 0; k < n; ++k) {
    apply_kinetic();
    if (k + 1 < n) apply_potential(false);
  }
  apply_potential(true);
  state_.t += static_cast<double>(n) * dt_;
}

double DiracSolver::boundary_mass_fraction() const {
  double edge = 0.0, total = 0.0;
  for (std::size_t k = 0; k < state_.psi1.size(); ++k) {
    const double w = std::norm(state_.psi1[k]) + std::norm(state_.psi2[k]);
    total += w;
    if (rolloff_[k]) edge += w;
  }
  return total > 0.0 ? edge / total : 0.0;
}

void DiracSolver::check_boundary() const {
  const double f = boundary_mass_fraction();
  if (f > opt_.contamination_tolerance) {
    throw BoundaryContamination("mass fraction " + std::to_string(f) + " reached the boundary roll-off at t = " +
                                std::to_string(state_.t));
  }
}

ObservableSeries evolve(DiracSolver& solver, double t_max, double cadence, const std::vector<Observer>& observers,
                        const ReferenceField& reference) {
  const std::size_t per_sample = whole_steps(cadence, solver.dt(), "cadence");
  if (per_sample == 0) throw std::invalid_argument("evolve: cadence shorter than dt");
  const std::size_t total = whole_steps(t_max - solver.time(), solver.dt(), "t_max");
  const double t0 = solver.time();

  ObservableSeries series;
  auto record = [&] {
    const SpinorGrid& s = solver.state();
    const double err = reference ? l2_error(s, reference(s.t)) : std::numeric_limits<double>::quiet_NaN();
    series.append(s, err);
    for (const Observer& obs : observers) obs(s);
  };
  solver.check_boundary();
  record();
  std::size_t done = 0;
  while (done < total) {
    const std::size_t n = std::min(per_sample, total - done);
    solver.advance(n);
    done += n;
    // re-anchor the clock so long runs do not accumulate rounding in t
    solver.set_time(t0 + static_cast<double>(done) * solver.dt());
    solver.check_boundary();
    record();
  }
  return series;
}

}  // namespace dirac_edge

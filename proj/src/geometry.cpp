#include "dirac_edge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dirac_edge/error.hpp"

namespace dirac_edge {

namespace {

// Second derivatives of a wall without analytic gradient are nested
// difference quotients; they need a wider step.
double second_derivative_step(const DomainWall& wall, Vec2 x) {
  return wall.grad ? fd_step(x) : 1e-3 * (1.0 + norm(x));
}

void require_finite(double v, const DomainWall& wall, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidWall("wall '" + wall.name + "': non-finite " + what);
  }
}

}  // namespace

Vec2 wall_gradient(const DomainWall& wall, Vec2 x) {
  if (wall.grad) return wall.grad(x);
  const double h = fd_step(x);
  return {(wall.kappa(x + Vec2{h, 0.0}) - wall.kappa(x - Vec2{h, 0.0})) / (2.0 * h),
          (wall.kappa(x + Vec2{0.0, h}) - wall.kappa(x - Vec2{0.0, h})) / (2.0 * h)};
}

Mat2 wall_hessian(const DomainWall& wall, Vec2 x) {
  if (wall.hessian) return wall.hessian(x);
  const double h = second_derivative_step(wall, x);
  const Vec2 d1 = (wall_gradient(wall, x + Vec2{h, 0.0}) - wall_gradient(wall, x - Vec2{h, 0.0})) / (2.0 * h);
  const Vec2 d2 = (wall_gradient(wall, x + Vec2{0.0, h}) - wall_gradient(wall, x - Vec2{0.0, h})) / (2.0 * h);
  const double off = 0.5 * (d1.y + d2.x);
  return {d1.x, off, off, d2.y};
}

WallEval eval_wall(const DomainWall& wall, Vec2 x) {
  if (!is_finite(x)) throw std::invalid_argument("eval_wall: non-finite point");
  if (!wall.kappa) throw InvalidWall("wall '" + wall.name + "' has no kappa");
  WallEval out;
  out.kappa = wall.kappa(x);
  out.grad = wall_gradient(wall, x);
  if (wall.laplacian) {
    out.laplacian = wall.laplacian(x);
  } else if (wall.hessian) {
    out.laplacian = wall.hessian(x).trace();
  } else {
    out.laplacian = wall_hessian(wall, x).trace();
  }
  require_finite(out.kappa, wall, "kappa");
  require_finite(out.grad.x, wall, "gradient");
  require_finite(out.grad.y, wall, "gradient");
  require_finite(out.laplacian, wall, "laplacian");
  return out;
}

UnitFields unit_fields(const DomainWall& wall, Vec2 x) {
  const Vec2 g = wall_gradient(wall, x);
  const double r = norm(g);
  if (!(r > kDegenerateGradient)) {
    throw DegenerateGradient("wall '" + wall.name + "': |grad kappa| = " + std::to_string(r) + " at (" +
                             std::to_string(x.x) + ", " + std::to_string(x.y) + ")");
  }
  const Vec2 n = g / r;
  return {n, quarter_turn(n)};
}

Vec2 project_to_interface(const DomainWall& wall, Vec2 x0) {
  Vec2 y = x0;
  for (int it = 0; it < 50; ++it) {
    const double k = wall.kappa(y);
    require_finite(k, wall, "kappa");
    if (std::abs(k) < 1e-10) return y;
    const Vec2 g = wall_gradient(wall, y);
    const double r = norm(g);
    if (!(r > kDegenerateGradient)) throw DegenerateGradient("project_to_interface: degenerate gradient");
    y -= (g / r) * (k / r);
  }
  if (std::abs(wall.kappa(y)) < 1e-10) return y;
  throw ProjectionFailed("project_to_interface: no convergence in 50 steps from (" + std::to_string(x0.x) + ", " +
                         std::to_string(x0.y) + ")");
}

double turning_rate_fd(const DomainWall& wall, Vec2 y) {
  const UnitFields f = unit_fields(wall, y);
  const double h = fd_step(y);
  const Vec2 np = unit_fields(wall, y + f.tau * h).n;
  const Vec2 nm = unit_fields(wall, y - f.tau * h).n;
  return dot(f.tau, (np - nm) / (2.0 * h));
}

double turning_rate(const DomainWall& wall, Vec2 y) {
  if (!wall.hessian) return turning_rate_fd(wall, y);
  const Vec2 g = wall_gradient(wall, y);
  const double r = norm(g);
  if (!(r > kDegenerateGradient)) throw DegenerateGradient("turning_rate: degenerate gradient");
  const Vec2 tau = quarter_turn(g / r);
  return quad_form(tau, wall.hessian(y), tau) / r;
}

double curvature(const DomainWall& wall, Vec2 y) { return std::abs(turning_rate(wall, y)); }

double frame_angle(Vec2 n) {
  // R_θ n = e₂  ⇔  n = (−sin θ, cos θ)
  double th = std::atan2(-n.x, n.y);
  if (th < 0.0) th += 2.0 * std::numbers::pi;
  if (th >= 2.0 * std::numbers::pi) th -= 2.0 * std::numbers::pi;
  return th;
}

double edge_speed(const DomainWall& wall, const MagneticPotential& field, Vec2 y) {
  const double r = norm(wall_gradient(wall, y));
  if (!(r > kDegenerateGradient)) throw DegenerateGradient("edge_speed: degenerate gradient");
  const double b = field_strength(field, y);
  return r / std::sqrt(r * r + b * b);
}

namespace {

struct Rate {
  Vec2 dy;
  double dtheta;
};

Rate center_rate(const DomainWall& wall, const MagneticPotential& field, Vec2 y) {
  const UnitFields f = unit_fields(wall, y);
  const double c = edge_speed(wall, field, y);
  return {f.tau * c, c * turning_rate(wall, y)};
}

FramePoint make_point(const DomainWall& wall, double t, Vec2 y, double theta) {
  const UnitFields f = unit_fields(wall, y);
  const double turn = turning_rate(wall, y);
  return {t, y, f.n, f.tau, theta, std::abs(turn), turn};
}

}  // namespace

Trajectory integrate_center(const DomainWall& wall, const MagneticPotential& field, Vec2 y0, double t_max,
                            double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_center: dt must be positive");
  if (!(t_max >= 0.0)) throw std::invalid_argument("integrate_center: t_max must be non-negative");
  const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));

  Trajectory traj;
  traj.dt = dt;
  traj.points.reserve(steps + 1);

  Vec2 y = project_to_interface(wall, y0);
  double theta = frame_angle(unit_fields(wall, y).n);
  traj.points.push_back(make_point(wall, 0.0, y, theta));

  for (std::size_t k = 1; k <= steps; ++k) {
    const Rate k1 = center_rate(wall, field, y);
    const Rate k2 = center_rate(wall, field, y + k1.dy * (0.5 * dt));
    const Rate k3 = center_rate(wall, field, y + k2.dy * (0.5 * dt));
    const Rate k4 = center_rate(wall, field, y + k3.dy * dt);
    y += (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy) * (dt / 6.0);
    theta += (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta) * (dt / 6.0);

    const double drift = std::abs(wall.kappa(y));
    traj.max_raw_drift = std::max(traj.max_raw_drift, drift);
    if (drift >= kDriftTolerance) ++traj.drift_warnings;
    y = project_to_interface(wall, y);

    traj.points.push_back(make_point(wall, static_cast<double>(k) * dt, y, theta));
  }
  return traj;
}

}  // namespace dirac_edge

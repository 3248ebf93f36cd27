#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dirac_edge/magnetic_potential.hpp"
#include "dirac_edge/vec2.hpp"

namespace dirac_edge {

/// Domain wall κ whose zero set Γ is the interface. Only `kappa` is
/// mandatory; derivatives that are not supplied are taken by centered
/// differences with step fd_step(x).
struct DomainWall {
  std::string name;
  std::function<double(Vec2)> kappa;
  std::function<Vec2(Vec2)> grad;
  std::function<double(Vec2)> laplacian;
  std::function<Mat2(Vec2)> hessian;
};

struct WallEval {
  double kappa = 0.0;
  Vec2 grad;
  double laplacian = 0.0;
};

struct UnitFields {
  Vec2 n;
  Vec2 tau;
};

/// Sample of the interface trajectory y_t and its moving frame.
struct FramePoint {
  double t = 0.0;
  Vec2 y;
  Vec2 n;
  Vec2 tau;
  /// Continuous in t; R_θ n = e₂ with R_θ the clockwise rotation.
  double theta = 0.0;
  /// K_t = |τ·∂_τ n|
  double curvature = 0.0;
  /// Signed turning rate τ·∂_τ n, so that θ̇ = c · turning.
  double turning = 0.0;
};

struct Trajectory {
  double dt = 0.0;
  std::vector<FramePoint> points;
  /// Steps whose raw RK4 update left the |κ| < 1e-6 band before re-projection.
  std::size_t drift_warnings = 0;
  double max_raw_drift = 0.0;
};

inline constexpr double kDegenerateGradient = 1e-8;
inline constexpr double kDriftTolerance = 1e-6;

WallEval eval_wall(const DomainWall& wall, Vec2 x);
Vec2 wall_gradient(const DomainWall& wall, Vec2 x);
Mat2 wall_hessian(const DomainWall& wall, Vec2 x);

/// n = ∇κ/|∇κ|, τ = J n. Throws DegenerateGradient when |∇κ| <= 1e-8.
UnitFields unit_fields(const DomainWall& wall, Vec2 x);

/// Newton iteration y ← y − κ(y) n(y)/|∇κ(y)| until |κ| < 1e-10 (50 steps max).
Vec2 project_to_interface(const DomainWall& wall, Vec2 x0);

/// τ·∂_τ n at y. Uses the analytic Hessian (τᵀHτ/|∇κ|) when present, else a
/// centered difference of n along τ.
double turning_rate(const DomainWall& wall, Vec2 y);

/// Same quantity, always by centered difference of n along τ.
double turning_rate_fd(const DomainWall& wall, Vec2 y);

/// K = |τ·∂_τ n|.
double curvature(const DomainWall& wall, Vec2 y);

/// θ ∈ [0, 2π) with R_θ n = e₂.
double frame_angle(Vec2 n);

/// c(y) = |∇κ| / sqrt(|∇κ|² + B²).
double edge_speed(const DomainWall& wall, const MagneticPotential& field, Vec2 y);

/// RK4 on ẏ = c(y)τ(y), θ̇ = c(y)(τ·∂_τ n)(y), re-projecting y onto Γ after
/// every step. Samples are at t_k = k·dt, k = 0..ceil(t_max/dt).
Trajectory integrate_center(const DomainWall& wall, const MagneticPotential& field, Vec2 y0, double t_max,
                            double dt);

}  // namespace dirac_edge

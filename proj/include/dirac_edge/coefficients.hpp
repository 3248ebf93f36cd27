#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dirac_edge/geometry.hpp"
#include "dirac_edge/magnetic_potential.hpp"

namespace dirac_edge {

/// Scalar coefficients of the leading-order wavepacket at one time sample.
struct TrackSample {
  double t = 0.0;
  Vec2 y;
  Vec2 n;
  Vec2 tau;
  double theta = 0.0;
  double r = 0.0;      // |∇κ(y_t)|
  double B = 0.0;      // B(y_t)
  double rho = 0.0;    // sqrt(r² + B²)
  double gamma = 0.0;  // B / ρ²
  double c = 0.0;      // r / ρ, the edge speed
  double s = 0.0;      // B / ρ
  double phi = 0.0;    // atan2(B, r), unwrapped
  double thetadot = 0.0;
  double j = 0.0;
  double k = 0.0;
  // filled by integrate_envelope
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  // geometric inputs kept for the independent dispersion-rate route
  double laplacian_kappa = 0.0;
  double dn_B = 0.0;
  double curvature_fd = 0.0;
  int convexity = 0;
  /// Running line integral ∫₀ᵗ ẏ_s·A(y_s) ds (Simpson on the samples).
  double action = 0.0;
  /// A(y_t) and ∇A(y_t), kept so the gauge phase needs no field lookups.
  Vec2 A;
  Mat2 grad_A;
};

class CoefficientTrack {
 public:
  CoefficientTrack() = default;
  CoefficientTrack(double dt, std::vector<TrackSample> samples) : dt_(dt), samples_(std::move(samples)) {}

  double dt() const { return dt_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const TrackSample& operator[](std::size_t i) const { return samples_[i]; }
  TrackSample& operator[](std::size_t i) { return samples_[i]; }
  const std::vector<TrackSample>& samples() const { return samples_; }
  double t_end() const { return samples_.empty() ? 0.0 : samples_.back().t; }

  /// Index of the sample at time t. Throws std::out_of_range when t is not a
  /// grid time (to within 1e-6 of the spacing).
  std::size_t index_of(double t) const;
  const TrackSample& at(double t) const { return samples_[index_of(t)]; }

  bool envelope_filled() const { return envelope_filled_; }
  void mark_envelope_filled() { envelope_filled_ = true; }

 private:
  double dt_ = 0.0;
  std::vector<TrackSample> samples_;
  bool envelope_filled_ = false;
};

/// Fills r, B, ρ, γ, c, s, φ, θ̇, j, k and the action integral along a
/// trajectory.
///   j = −r c ∂_τ(B/|∇κ|),  k = (c/2)(∂_n B − B Δκ / r).
CoefficientTrack sample_coefficients(const Trajectory& traj, const DomainWall& wall, const MagneticPotential& field);

/// λ_t = ∫ k/(2ρ), ν_t = 2∫ (c₀²/c²)(θ̇γ + kγ²) by running Simpson, e^{μ_t} = c_t/c₀.
CoefficientTrack integrate_envelope(CoefficientTrack track);

/// Trajectory + coefficients + envelope integrals in one call.
CoefficientTrack build_track(const DomainWall& wall, const MagneticPotential& field, Vec2 y0, double t_max,
                             double dt);

struct DispersionRoutes {
  double from_track = 0.0;      // θ̇ + γ k
  double from_geometry = 0.0;   // c (ε K + ½ (B ∂_n B − B² Δκ / r) / (B² + r²))
};

DispersionRoutes dispersion_rate_routes(const CoefficientTrack& track, std::size_t idx);

/// θ̇_t + γ_t k_t. Throws ConsistencyError when the two routes disagree by
/// more than 1e-6.
double dispersion_rate(const CoefficientTrack& track, std::size_t idx);

/// CSV with columns t,y1,y2,theta,r,B,rho,gamma,c,s,phi,thetadot,j,k,lambda,mu,nu.
void write_track_csv(std::ostream& os, const CoefficientTrack& track);

}  // namespace dirac_edge

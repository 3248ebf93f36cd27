#include "dirac_edge/coefficients.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "dirac_edge/error.hpp"
#include "dirac_edge/quadrature.hpp"

namespace dirac_edge {

std::size_t CoefficientTrack::index_of(double t) const {
  if (samples_.empty()) throw std::out_of_range("CoefficientTrack: empty track");
  const double pos = (t - samples_.front().t) / dt_;
  const double rounded = std::round(pos);
  if (rounded < 0.0 || rounded >= static_cast<double>(samples_.size()) || std::abs(pos - rounded) > 1e-6) {
    throw std::out_of_range("CoefficientTrack: t = " + std::to_string(t) + " is not a track sample time");
  }
  return static_cast<std::size_t>(rounded);
}

namespace {

// ∂_τ (B / |∇κ|) at y.
double tangential_beta_derivative(const DomainWall& wall, const MagneticPotential& field, Vec2 y, Vec2 n,
                                  Vec2 tau, double r, double b) {
  if (wall.hessian) {
    const double dtau_B = dot(tau, field_gradient(field, y));
    const double dtau_r = quad_form(tau, wall.hessian(y), n);
    return dtau_B / r - b * dtau_r / (r * r);
  }
  const double h = fd_step(y);
  auto beta = [&](Vec2 p) { return field_strength(field, p) / norm(wall_gradient(wall, p)); };
  return (beta(y + tau * h) - beta(y - tau * h)) / (2.0 * h);
}

int convexity_sign(const DomainWall& wall, Vec2 y, Vec2 tau) {
  const double form = quad_form(tau, wall_hessian(wall, y), tau);
  if (std::abs(form) < 1e-12) return 0;
  return form > 0.0 ? 1 : -1;
}

}  // namespace

CoefficientTrack sample_coefficients(const Trajectory& traj, const DomainWall& wall, const MagneticPotential& field) {
  if (traj.points.empty()) throw std::invalid_argument("sample_coefficients: empty trajectory");
  std::vector<TrackSample> out;
  out.reserve(traj.points.size());

  std::vector<double> power;  // ẏ·A
  power.reserve(traj.points.size());

  for (const FramePoint& p : traj.points) {
    TrackSample s;
    s.t = p.t;
    s.y = p.y;
    s.n = p.n;
    s.tau = p.tau;
    s.theta = p.theta;

    const WallEval w = eval_wall(wall, p.y);
    s.r = norm(w.grad);
    if (!(s.r > kDegenerateGradient)) throw DegenerateGradient("sample_coefficients: degenerate r_t");
    s.laplacian_kappa = w.laplacian;
    s.B = field_strength(field, p.y);
    s.rho = std::hypot(s.r, s.B);
    s.gamma = s.B / (s.rho * s.rho);
    s.c = s.r / s.rho;
    s.s = s.B / s.rho;
    s.phi = std::atan2(s.B, s.r);
    s.thetadot = s.c * p.turning;

    s.dn_B = dot(p.n, field_gradient(field, p.y));
    s.j = -s.r * s.c * tangential_beta_derivative(wall, field, p.y, p.n, p.tau, s.r, s.B);
    s.k = 0.5 * s.c * (s.dn_B - s.B * s.laplacian_kappa / s.r);

    s.curvature_fd = std::abs(turning_rate_fd(wall, p.y));
    s.convexity = convexity_sign(wall, p.y, p.tau);

    s.A = potential(field, p.y);
    s.grad_A = potential_gradient(field, p.y);
    power.push_back(s.c * dot(p.tau, s.A));
    out.push_back(s);
  }

  // φ₀ ∈ [0, 2π), continuous afterwards
  if (out.front().phi < 0.0) out.front().phi += 2.0 * std::numbers::pi;
  for (std::size_t i = 1; i < out.size(); ++i) {
    double d = out[i].phi - out[i - 1].phi;
    d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
    out[i].phi = out[i - 1].phi + d;
  }

  const std::vector<double> action = cumulative_simpson(power, traj.dt);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].action = action[i];

  return CoefficientTrack(traj.dt, std::move(out));
}

CoefficientTrack integrate_envelope(CoefficientTrack track) {
  const std::size_t n = track.size();
  if (n == 0) return track;
  const double c0 = track[0].c;
  std::vector<double> lam(n), nu(n);
  for (std::size_t i = 0; i < n; ++i) {
    const TrackSample& s = track[i];
    lam[i] = s.k / (2.0 * s.rho);
    nu[i] = 2.0 * (c0 * c0) / (s.c * s.c) * (s.thetadot * s.gamma + s.k * s.gamma * s.gamma);
  }
  const std::vector<double> lam_int = cumulative_simpson(lam, track.dt());
  const std::vector<double> nu_int = cumulative_simpson(nu, track.dt());
  for (std::size_t i = 0; i < n; ++i) {
    track[i].lambda = lam_int[i];
    track[i].nu = nu_int[i];
    track[i].mu = std::log(track[i].c / c0);
  }
  track.mark_envelope_filled();
  return track;
}

CoefficientTrack build_track(const DomainWall& wall, const MagneticPotential& field, Vec2 y0, double t_max,
                             double dt) {
  return integrate_envelope(sample_coefficients(integrate_center(wall, field, y0, t_max, dt), wall, field));
}

DispersionRoutes dispersion_rate_routes(const CoefficientTrack& track, std::size_t idx) {
  const TrackSample& s = track[idx];
  DispersionRoutes r;
  r.from_track = s.thetadot + s.gamma * s.k;
  const double magnetic =
      0.5 * (s.B * s.dn_B - s.B * s.B * s.laplacian_kappa / s.r) / (s.B * s.B + s.r * s.r);
  r.from_geometry = s.c * (static_cast<double>(s.convexity) * s.curvature_fd + magnetic);
  return r;
}

double dispersion_rate(const CoefficientTrack& track, std::size_t idx) {
  const DispersionRoutes r = dispersion_rate_routes(track, idx);
  if (std::abs(r.from_track - r.from_geometry) > 1e-6) {
    throw ConsistencyError("dispersion_rate: routes disagree at t = " + std::to_string(track[idx].t) + " (" +
                           std::to_string(r.from_track) + " vs " + std::to_string(r.from_geometry) + ")");
  }
  return r.from_track;
}

void write_track_csv(std::ostream& os, const CoefficientTrack& track) {
  os << "t,y1,y2,theta,r,B,rho,gamma,c,s,phi,thetadot,j,k,lambda,mu,nu\n";
  char buf[512];
  for (const TrackSample& s : track.samples()) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g\n",
                  s.t, s.y.x, s.y.y, s.theta, s.r, s.B, s.rho, s.gamma, s.c, s.s, s.phi, s.thetadot, s.j, s.k,
                  s.lambda, s.mu, s.nu);
    os << buf;
  }
}

}  // namespace dirac_edge

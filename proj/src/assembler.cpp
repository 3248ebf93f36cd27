#include "dirac_edge/assembler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirac_edge/error.hpp"
#include "dirac_edge/parallel.hpp"

namespace dirac_edge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// Catmull-Rom weights for offsets −1, 0, 1, 2 at fraction u.
std::array<double, 4> cubic_weights(double u) {
  const double u2 = u * u, u3 = u2 * u;
  return {0.5 * (-u3 + 2.0 * u2 - u), 0.5 * (3.0 * u3 - 5.0 * u2 + 2.0), 0.5 * (-3.0 * u3 + 4.0 * u2 + u),
          0.5 * (u3 - u2)};
}

cplx bicubic(const EnvelopeField& f, Vec2 z) {
  const std::size_t n1 = f.z1.size(), n2 = f.z2.size();
  const double h1 = (f.z1.back() - f.z1.front()) / static_cast<double>(n1 - 1);
  const double h2 = (f.z2.back() - f.z2.front()) / static_cast<double>(n2 - 1);
  const double p1 = (z.x - f.z1.front()) / h1;
  const double p2 = (z.y - f.z2.front()) / h2;
  if (p1 < 1.0 || p2 < 1.0 || p1 > static_cast<double>(n1 - 2) || p2 > static_cast<double>(n2 - 2)) return {};
  const auto i = std::min(static_cast<std::size_t>(p1), n1 - 3);
  const auto j = std::min(static_cast<std::size_t>(p2), n2 - 3);
  const auto w1 = cubic_weights(p1 - static_cast<double>(i));
  const auto w2 = cubic_weights(p2 - static_cast<double>(j));
  cplx acc{};
  for (std::size_t b = 0; b < 4; ++b) {
    cplx row{};
    for (std::size_t a = 0; a < 4; ++a) row += w1[a] * f(i + a - 1, j + b - 1);
    acc += w2[b] * row;
  }
  return acc;
}

void check_window(const SpinorGrid& g, double expected_norm_sq, double tol, const char* who) {
  if (expected_norm_sq <= 0.0) return;
  const double got = g.l2_norm();
  const double missing = (expected_norm_sq - got * got) / expected_norm_sq;
  if (missing > tol) {
    throw WindowError(std::string(who) + ": wavepacket mass outside the grid window is " + std::to_string(missing) +
                      " of the total");
  }
}

}  // namespace

SpinRotations spin_rotations(double theta, double phi) {
  const cplx e = std::exp(-0.5 * kI * theta);
  const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
  return {{e, 0.0, 0.0, std::conj(e)}, {c, -s, s, c}};
}

double gauge_phase_quadratic(const TrackSample& s, Vec2 x, double q) {
  const Vec2 d = x - s.y;
  const Mat2 m = s.grad_A.transposed() - outer(s.n, s.tau) * s.B;
  return s.action + dot(s.A, d) + q * quad_form(d, m, d);
}

double gauge_phase_quadratic(const CoefficientTrack& track, double t, Vec2 x, double q) {
  return gauge_phase_quadratic(track.at(t), x, q);
}

SpinorGrid assemble_leading_order(const WavepacketSpec& spec, const CoefficientTrack& track, double t,
                                  const GridParams& grid, AssemblyOptions opt) {
  validate(spec);
  if (!track.envelope_filled()) throw std::invalid_argument("assemble_leading_order: envelope integrals not filled");
  const TrackSample& s = track.at(t);
  const double eps = spec.epsilon;
  const double sqeps = std::sqrt(eps);
  const Mat2 rot = clockwise_rotation(s.theta);
  const SpinRotations u = spin_rotations(s.theta, s.phi);
  const Mat2c spin = u.u3 * u.u2;
  const Spinor dir = spin * Spinor{1.0, -1.0};

  const auto* gauss = std::get_if<GaussianProfile>(&spec.profile);
  EnvelopeField sampled;
  if (!gauss) {
    // envelope on a z-grid at half the physical spacing, then interpolated
    const double h = 0.5 * std::min(grid.hx(), grid.hy()) / sqeps;
    double reach = 0.0;
    for (Vec2 c : {Vec2{grid.x0, grid.y0}, Vec2{grid.x1, grid.y0}, Vec2{grid.x0, grid.y1}, Vec2{grid.x1, grid.y1}}) {
      reach = std::max(reach, norm(c - s.y) / sqeps);
    }
    reach = std::min(reach, 30.0) + 2.0 * h;
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * reach / h)) + 1;
    std::vector<double> axis(n);
    for (std::size_t k = 0; k < n; ++k) axis[k] = -reach + h * static_cast<double>(k);
    sampled = envelope_numeric(spec, track, t, axis, axis);
  }

  SpinorGrid out(grid, t, eps);
  const double scale = 1.0 / sqeps;
  parallel_for(grid.ny, [&](std::size_t jb, std::size_t je) {
    for (std::size_t j = jb; j < je; ++j) {
      for (std::size_t i = 0; i < grid.nx; ++i) {
        const Vec2 x = grid.point(i, j);
        const Vec2 w = rot * ((x - s.y) / sqeps);
        const cplx amp = gauss ? gaussian_envelope_scalar(gauss->sigma, s, w) : bicubic(sampled, w);
        if (amp == cplx{}) continue;
        const double chi = gauge_phase_quadratic(s, x, opt.q);
        const cplx f = scale * amp * std::exp(kI * (chi / eps));
        const std::size_t k = out.index(i, j);
        out.psi1[k] = f * dir[0];
        out.psi2[k] = f * dir[1];
      }
    }
  });
  check_window(out, profile_norm_sq(spec.profile), opt.window_tolerance, "assemble_leading_order");
  return out;
}

SpinorGrid exact_flat_solution(double B, const WavepacketSpec& spec, double t, const GridParams& grid) {
  validate(spec);
  const double eps = spec.epsilon;
  const double sqeps = std::sqrt(eps);
  const double rho = std::sqrt(1.0 + B * B);
  const double gamma = B / (1.0 + B * B);
  const double c = 1.0 / rho;
  const Vec2 tau{-1.0, 0.0};
  const Vec2 yt = Vec2{spec.y0.x, 0.0} + tau * (c * t);
  const SpinRotations u = spin_rotations(0.0, std::atan(B));
  const Spinor dir = u.u2 * Spinor{1.0, -1.0};

  // ξ-grid: same truncation rule as envelope_numeric at t = 0
  double xi_max = 0.0;
  if (const auto* g = std::get_if<GaussianProfile>(&spec.profile)) {
    xi_max = std::sqrt(2.0 * std::log(1e14) / g->sigma);
  } else {
    const auto& sp = std::get<SampledProfile>(spec.profile);
    xi_max = std::max(std::abs(sp.xi0), std::abs(sp.xi0 + sp.dxi * static_cast<double>(sp.values.size() - 1)));
  }
  double z1_max = 0.0;
  for (std::size_t i = 0; i < grid.nx; ++i) z1_max = std::max(z1_max, std::abs(grid.x(i) - yt.x) / sqeps);
  const double width = 1.0 / std::sqrt(std::get_if<GaussianProfile>(&spec.profile)
                                           ? std::get<GaussianProfile>(spec.profile).sigma + rho * gamma * gamma
                                           : 1.0);
  const double dxi = std::min(kPi / (4.0 * z1_max), width / 40.0);
  const auto n_xi = static_cast<std::size_t>(std::ceil(2.0 * xi_max / dxi)) + 1;
  const double h = 2.0 * xi_max / static_cast<double>(n_xi - 1);
  std::vector<double> xi(n_xi);
  std::vector<cplx> fw(n_xi);
  for (std::size_t q = 0; q < n_xi; ++q) {
    xi[q] = -xi_max + h * static_cast<double>(q);
    fw[q] = ((q == 0 || q + 1 == n_xi) ? 0.5 : 1.0) * profile_value(spec.profile, xi[q]);
  }
  const double amp = std::pow(rho / (4.0 * kPi), 0.25) * h / std::sqrt(2.0 * kPi) / sqeps;

  SpinorGrid out(grid, t, eps);
  std::vector<cplx> carrier(grid.nx * n_xi);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    const double z1 = (grid.x(i) - yt.x) / sqeps;
    for (std::size_t q = 0; q < n_xi; ++q) carrier[i * n_xi + q] = std::exp(kI * (z1 * xi[q]));
  }
  parallel_for(grid.ny, [&](std::size_t jb, std::size_t je) {
    std::vector<cplx> weighted(n_xi);
    for (std::size_t j = jb; j < je; ++j) {
      const double z2 = (grid.y(j) - yt.y) / sqeps;
      for (std::size_t q = 0; q < n_xi; ++q) {
        const double zeta = z2 + gamma * xi[q];
        weighted[q] = fw[q] * std::exp(-0.5 * rho * zeta * zeta);
      }
      for (std::size_t i = 0; i < grid.nx; ++i) {
        const cplx* row = carrier.data() + i * n_xi;
        cplx acc{};
        for (std::size_t q = 0; q < n_xi; ++q) acc += weighted[q] * row[q];
        const std::size_t k = out.index(i, j);
        out.psi1[k] = amp * acc * dir[0];
        out.psi2[k] = amp * acc * dir[1];
      }
    }
  });
  return out;
}

}  // namespace dirac_edge

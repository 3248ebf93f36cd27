#include "dirac_edge/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dirac_edge/error.hpp"
#include "dirac_edge/fft.hpp"
#include "dirac_edge/parallel.hpp"
#include "dirac_edge/quadrature.hpp"

namespace dirac_edge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

cplx sampled_value(const SampledProfile& p, double xi) {
  const std::size_t n = p.values.size();
  if (n == 0) return {};
  const double pos = (xi - p.xi0) / p.dxi;
  if (pos < 0.0 || pos > static_cast<double>(n - 1)) return {};
  if (n < 4) {
    const auto i = std::min(static_cast<std::size_t>(pos), n - 1);
    return p.values[i];
  }
  // four-point Lagrange, stencil shifted inward at the ends
  auto base = static_cast<long long>(std::floor(pos)) - 1;
  base = std::clamp(base, 0LL, static_cast<long long>(n) - 4);
  const double u = pos - static_cast<double>(base);
  const double w0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
  const double w1 = u * (u - 2.0) * (u - 3.0) / 2.0;
  const double w2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
  const double w3 = u * (u - 1.0) * (u - 2.0) / 6.0;
  const auto b = static_cast<std::size_t>(base);
  return w0 * p.values[b] + w1 * p.values[b + 1] + w2 * p.values[b + 2] + w3 * p.values[b + 3];
}

// Extent outside which f̂ is below 1e-14 (Gaussian) or zero (sampled).
double profile_support(const Profile& profile) {
  if (const auto* g = std::get_if<GaussianProfile>(&profile)) {
    return std::sqrt(2.0 * std::log(1e14) / g->sigma);
  }
  const auto& s = std::get<SampledProfile>(profile);
  if (s.values.empty()) return 0.0;
  const double end = s.xi0 + s.dxi * static_cast<double>(s.values.size() - 1);
  return std::max(std::abs(s.xi0), std::abs(end));
}

// Nodes of an explicit spacing must be uniform for the fourth-order stencils.
double uniform_spacing(std::span<const double> grid, const char* who) {
  if (grid.size() < 5) throw std::invalid_argument(std::string(who) + ": need at least 5 grid points");
  const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs(grid[i] - grid[i - 1] - h) > 1e-9 * std::abs(h)) {
      throw std::invalid_argument(std::string(who) + ": grid is not uniform");
    }
  }
  return h;
}

double axis_spacing(const std::vector<double>& axis) {
  return axis.size() < 2 ? 0.0 : (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
}

}  // namespace

void validate(const WavepacketSpec& spec) {
  if (!(spec.epsilon > 0.0 && spec.epsilon <= 1.0)) {
    throw std::invalid_argument("WavepacketSpec: epsilon must lie in (0, 1]");
  }
  if (!is_finite(spec.y0)) throw std::invalid_argument("WavepacketSpec: non-finite base point");
  if (const auto* g = std::get_if<GaussianProfile>(&spec.profile)) {
    if (!(g->sigma > 0.0)) throw std::invalid_argument("WavepacketSpec: sigma must be positive");
    return;
  }
  const auto& s = std::get<SampledProfile>(spec.profile);
  if (s.values.size() < 4 || !(s.dxi > 0.0)) {
    throw std::invalid_argument("WavepacketSpec: sampled profile needs >= 4 nodes and positive spacing");
  }
  if (std::abs(s.values.front()) >= 1e-12 || std::abs(s.values.back()) >= 1e-12) {
    throw std::invalid_argument("WavepacketSpec: sampled profile does not decay below 1e-12 at the grid ends");
  }
}

cplx profile_value(const Profile& profile, double xi) {
  if (const auto* g = std::get_if<GaussianProfile>(&profile)) return std::exp(-0.5 * g->sigma * xi * xi);
  return sampled_value(std::get<SampledProfile>(profile), xi);
}

double profile_norm_sq(const Profile& profile) {
  if (const auto* g = std::get_if<GaussianProfile>(&profile)) return std::sqrt(kPi / g->sigma);
  const auto& s = std::get<SampledProfile>(profile);
  std::vector<double> sq(s.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::norm(s.values[i]);
  return trapezoid(sq, s.dxi);
}

double profile_l1_norm(const Profile& profile) {
  if (const auto* g = std::get_if<GaussianProfile>(&profile)) return std::sqrt(2.0 * kPi / g->sigma);
  const auto& s = std::get<SampledProfile>(profile);
  std::vector<double> a(s.values.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(s.values[i]);
  return trapezoid(a, s.dxi);
}

double profile_inverse_l1_norm(const Profile& profile) {
  if (std::holds_alternative<GaussianProfile>(profile)) return 1.0;
  const auto& s = std::get<SampledProfile>(profile);
  const std::size_t n = s.values.size();
  if (n < 2) return 0.0;
  // f(z) on [−π/Δξ, π/Δξ], four nodes per ξ-node
  const double zmax = kPi / s.dxi;
  const std::size_t nz = 4 * n + 1;
  const double dz = 2.0 * zmax / static_cast<double>(nz - 1);
  std::vector<double> a(nz);
  for (std::size_t m = 0; m < nz; ++m) {
    const double z = -zmax + dz * static_cast<double>(m);
    cplx acc{};
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = s.xi0 + s.dxi * static_cast<double>(i);
      const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
      acc += w * std::exp(kI * (z * xi)) * s.values[i];
    }
    a[m] = std::abs(acc) * s.dxi / (2.0 * kPi);
  }
  return trapezoid(a, dz);
}

std::array<double, 2> hermite_ground(double rho, double zeta) {
  if (!(rho > 0.0)) throw std::invalid_argument("hermite_ground: rho must be positive");
  const double v = std::pow(rho / (4.0 * kPi), 0.25) * std::exp(-0.5 * rho * zeta * zeta);
  return {v, -v};
}

cplx transport_profile(const Profile& profile, const TrackSample& s, double xi) {
  const double em = std::exp(s.mu);
  const double x = em * xi;
  return std::exp(kI * (s.lambda + 0.5 * s.nu * x * x)) * std::sqrt(em) * profile_value(profile, x);
}

cplx transport_profile(const WavepacketSpec& spec, const CoefficientTrack& track, double t, double xi) {
  return transport_profile(spec.profile, track.at(t), xi);
}

double transport_residual(const WavepacketSpec& spec, const CoefficientTrack& track, double t,
                          std::span<const double> xi_grid) {
  if (!track.envelope_filled()) throw std::invalid_argument("transport_residual: envelope integrals not filled");
  const std::size_t idx = track.index_of(t);
  const std::size_t nxi = xi_grid.size();
  const double hxi = uniform_spacing(xi_grid, "transport_residual");
  if (track.size() < 5) throw std::invalid_argument("transport_residual: track needs at least 5 samples");

  const TrackSample& s = track[idx];
  const Stencil5 st = derivative_stencil(idx, track.size());

  std::vector<cplx> row(nxi);
  for (std::size_t m = 0; m < nxi; ++m) row[m] = transport_profile(spec.profile, s, xi_grid[m]);

  const double quad = s.thetadot * s.gamma + s.k * s.gamma * s.gamma;
  double worst = 0.0;
  for (std::size_t m = 0; m < nxi; ++m) {
    const double xi = xi_grid[m];
    cplx dt_f{};
    for (std::size_t q = 0; q < 5; ++q) {
      dt_f += st.w[q] * transport_profile(spec.profile, track[st.start + q], xi);
    }
    dt_f /= track.dt();
    const Stencil5 sx = derivative_stencil(m, nxi);
    cplx dxi_f{};
    for (std::size_t q = 0; q < 5; ++q) dxi_f += sx.w[q] * row[sx.start + q];
    dxi_f /= hxi;

    // D = −i∂;  (ξD_ξ + D_ξ ξ)/2 f = −i(ξ ∂_ξ f + f/2)
    const cplx f = row[m];
    const cplx res = -kI * dt_f - (s.k / (2.0 * s.rho)) * f - 0.5 * s.j * s.gamma * (-kI) * (2.0 * xi * dxi_f + f) -
                     quad * xi * xi * f;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

cplx gaussian_envelope_scalar(double sigma, const TrackSample& s, Vec2 z) {
  const double e2m = std::exp(2.0 * s.mu);
  // Re Q >= e^{2μ}σ > 0, so the principal root needs no branch tracking
  const cplx q{e2m * sigma + s.s * s.gamma, -e2m * s.nu};
  const cplx w = z.x + kI * (s.s * z.y);
  return std::pow(s.rho / (4.0 * kPi), 0.25) * std::exp(0.5 * s.mu) / std::sqrt(q) *
         std::exp(kI * s.lambda - 0.5 * s.rho * z.y * z.y - w * w / (2.0 * q));
}

Spinor gaussian_envelope_closed_form(double sigma, const TrackSample& s, Vec2 z) {
  const cplx u = gaussian_envelope_scalar(sigma, s, z);
  return {u, -u};
}

Spinor gaussian_envelope_closed_form(double sigma, const CoefficientTrack& track, double t, Vec2 z) {
  return gaussian_envelope_closed_form(sigma, track.at(t), z);
}

double EnvelopeField::l2_norm() const {
  const std::size_t n1 = z1.size();
  const std::size_t n2 = z2.size();
  if (n1 < 2 || n2 < 2) return 0.0;
  double acc = 0.0;
  for (std::size_t j = 0; j < n2; ++j) {
    const double wj = (j == 0 || j + 1 == n2) ? 0.5 : 1.0;
    for (std::size_t i = 0; i < n1; ++i) {
      const double wi = (i == 0 || i + 1 == n1) ? 0.5 : 1.0;
      acc += wi * wj * std::norm(values[j * n1 + i]);
    }
  }
  const double spinor_factor = one_minus_one_spinor ? 2.0 : 1.0;
  return std::sqrt(spinor_factor * acc * axis_spacing(z1) * axis_spacing(z2));
}

double EnvelopeField::max_abs() const {
  double m = 0.0;
  for (const cplx& v : values) m = std::max(m, std::abs(v));
  return m;
}

EnvelopeField envelope_numeric(const WavepacketSpec& spec, const CoefficientTrack& track, double t,
                               std::span<const double> z1, std::span<const double> z2, EnvelopeQuadrature opt) {
  if (!track.envelope_filled()) throw std::invalid_argument("envelope_numeric: envelope integrals not filled");
  const TrackSample& s = track.at(t);
  EnvelopeField out;
  out.z1.assign(z1.begin(), z1.end());
  out.z2.assign(z2.begin(), z2.end());
  out.values.assign(z1.size() * z2.size(), cplx{});
  if (z1.empty() || z2.empty()) return out;

  // truncation: scan inward from the support bound of f̂(e^μ ·)
  const double em = std::exp(s.mu);
  const double outer = profile_support(spec.profile) / em;
  const double scan = outer / 4000.0;
  double xi_max = 0.0;
  for (double x = outer; x > 0.0; x -= scan) {
    if (std::abs(transport_profile(spec.profile, s, x)) >= 1e-14 ||
        std::abs(transport_profile(spec.profile, s, -x)) >= 1e-14) {
      xi_max = std::min(outer, x + scan);
      break;
    }
  }
  if (xi_max == 0.0) return out;  // f̂ ≡ 0

  double z1_max = 0.0;
  for (double z : z1) z1_max = std::max(z1_max, std::abs(z));
  const double phase_rate = z1_max + std::abs(s.nu) * em * em * xi_max;

  std::size_t n_xi = opt.n_xi;
  if (n_xi == 0) {
    // four nodes per Nyquist interval, and at least 40 per unit Gaussian width
    const double width = 1.0 / std::sqrt(em * em * (std::holds_alternative<GaussianProfile>(spec.profile)
                                                         ? std::get<GaussianProfile>(spec.profile).sigma
                                                         : 1.0) +
                                         s.s * s.gamma);
    const double h = std::min(kPi / (4.0 * std::max(phase_rate, 1e-300)), width / 40.0);
    n_xi = static_cast<std::size_t>(std::ceil(2.0 * xi_max / h)) + 1;
  }
  if (n_xi < 3) throw GridResolutionError("envelope_numeric: fewer than 3 xi nodes");
  const double dxi = 2.0 * xi_max / static_cast<double>(n_xi - 1);
  if (dxi * phase_rate >= kPi) {
    throw GridResolutionError("envelope_numeric: xi spacing " + std::to_string(dxi) +
                              " fails the Nyquist check against phase rate " + std::to_string(phase_rate));
  }

  std::vector<double> xi(n_xi);
  std::vector<cplx> f0(n_xi);
  for (std::size_t q = 0; q < n_xi; ++q) {
    xi[q] = -xi_max + dxi * static_cast<double>(q);
    const double w = (q == 0 || q + 1 == n_xi) ? 0.5 : 1.0;
    f0[q] = w * transport_profile(spec.profile, s, xi[q]);
  }

  const double amp = std::pow(s.rho / (4.0 * kPi), 0.25) * dxi / std::sqrt(2.0 * kPi);
  const std::size_t n1 = z1.size();
  // the integrand separates into e^{i z₁ ξ} and a z₂-dependent factor
  std::vector<cplx> carrier(n1 * n_xi);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t q = 0; q < n_xi; ++q) {
      const double ph = z1[i] * xi[q];
      carrier[i * n_xi + q] = {std::cos(ph), std::sin(ph)};
    }
  }
  parallel_for(z2.size(), [&](std::size_t jb, std::size_t je) {
    std::vector<cplx> weighted(n_xi);
    for (std::size_t j = jb; j < je; ++j) {
      std::size_t lo = n_xi, hi = 0;
      for (std::size_t q = 0; q < n_xi; ++q) {
        const double zeta = z2[j] + s.gamma * xi[q];
        weighted[q] = f0[q] * std::exp(-0.5 * s.rho * zeta * zeta);
        if (weighted[q] != cplx{}) {
          lo = std::min(lo, q);
          hi = q + 1;
        }
      }
      for (std::size_t i = 0; i < n1; ++i) {
        const cplx* row = carrier.data() + i * n_xi;
        cplx acc{};
        for (std::size_t q = lo; q < hi; ++q) acc += weighted[q] * row[q];
        out.values[j * n1 + i] = amp * acc;
      }
    }
  });
  return out;
}

AmplitudeBound sup_amplitude_bound(const CoefficientTrack& track, double t, double f_l1_norm, double fhat_l1_norm) {
  if (!track.envelope_filled()) throw std::invalid_argument("sup_amplitude_bound: envelope integrals not filled");
  const TrackSample& s = track.at(t);
  const double pref = std::pow(s.rho / (4.0 * kPi), 0.25);
  AmplitudeBound b;
  b.smooth_constant = pref * std::exp(-0.5 * s.mu) / std::sqrt(2.0 * kPi);
  const double smooth = b.smooth_constant * fhat_l1_norm;
  if (s.nu == 0.0) {
    b.value = smooth;
    return b;
  }
  const double e2m = std::exp(2.0 * s.mu);
  const double q_abs = std::abs(cplx{s.s * s.gamma, -e2m * s.nu});
  const double g0 = pref * std::sqrt(std::exp(s.mu) / q_abs);
  b.dispersive_constant = g0 * std::sqrt(std::abs(s.nu));
  b.value = std::min(b.dispersive_constant * f_l1_norm / std::sqrt(std::abs(s.nu)), smooth);
  return b;
}

double kernel_residual(const Profile& profile, const TrackSample& s, std::span<const double> xi_grid,
                       std::size_t n_zeta, double zeta_half_width) {
  if (n_zeta < 4) throw std::invalid_argument("kernel_residual: need at least 4 zeta nodes");
  const double length = 2.0 * zeta_half_width;
  const double h = length / static_cast<double>(n_zeta);
  std::vector<double> zeta(n_zeta);
  for (std::size_t m = 0; m < n_zeta; ++m) zeta[m] = -zeta_half_width + h * static_cast<double>(m);

  double worst = 0.0;
  std::vector<cplx> a1(n_zeta), a2(n_zeta);
  for (double xi : xi_grid) {
    const cplx f = transport_profile(profile, s, xi);
    for (std::size_t m = 0; m < n_zeta; ++m) {
      const auto phi = hermite_ground(s.rho, zeta[m]);
      a1[m] = f * phi[0];
      a2[m] = f * phi[1];
    }
    const std::vector<cplx> d1 = spectral_momentum(a1, length);
    const std::vector<cplx> d2 = spectral_momentum(a2, length);
    for (std::size_t m = 0; m < n_zeta; ++m) {
      // c(1+σ₁)ξ a + σ₂ D_ζ a + ρζ σ₃ a
      const cplx r1 = s.c * xi * (a1[m] + a2[m]) - kI * d2[m] + s.rho * zeta[m] * a1[m];
      const cplx r2 = s.c * xi * (a2[m] + a1[m]) + kI * d1[m] - s.rho * zeta[m] * a2[m];
      worst = std::max(worst, std::sqrt(std::norm(r1) + std::norm(r2)));
    }
  }
  return worst;
}

}  // namespace dirac_edge

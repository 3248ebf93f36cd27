#include <doctest.h>

#include <cmath>
#include <vector>

#include "dirac_edge/envelope.hpp"
#include "dirac_edge/error.hpp"
#include "dirac_edge/quadrature.hpp"
#include "helpers.hpp"

using namespace dirac_edge;
using doctest::Approx;

namespace {

std::vector<double> axis(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

WavepacketSpec gaussian_spec(double sigma = 1.0) {
  WavepacketSpec s;
  s.epsilon = 0.2;
  s.y0 = {1.0, 0.0};
  s.profile = GaussianProfile{sigma};
  return s;
}

}  // namespace

TEST_CASE("hermite_ground") {
  const auto v = hermite_ground(1.0, 0.0);
  CHECK(v[0] == Approx(std::pow(4.0 * test::pi, -0.25)));
  CHECK(v[0] == Approx(0.5311).epsilon(1e-4));
  CHECK(v[1] == Approx(-v[0]));
  for (double rho : {0.3, 1.0, 2.5}) {
    const double h = 0.01;
    std::vector<double> d;
    for (double z = -20.0; z <= 20.0; z += h) {
      const auto p = hermite_ground(rho, z);
      d.push_back(p[0] * p[0] + p[1] * p[1]);
    }
    CHECK(trapezoid(d, h) == Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(hermite_ground(rho, 10.0 / std::sqrt(rho) + 1e-9)[0]) < 1e-15);
  }
}

TEST_CASE("validate rejects bad packets") {
  WavepacketSpec s = gaussian_spec();
  CHECK_NOTHROW(validate(s));
  s.epsilon = 0.0;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s = gaussian_spec(-1.0);
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s = gaussian_spec();
  s.profile = SampledProfile{-1.0, 0.5, {1.0, 1.0, 1.0, 1.0, 1.0}};
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
}

TEST_CASE("transport_profile examples") {
  const WavepacketSpec spec = gaussian_spec();
  const CoefficientTrack circ = test::circle_track(1.0 / std::sqrt(2.0), 2.0);
  const CoefficientTrack flat = test::flat_track(1.0, 2.0);
  for (double xi : {-2.0, -0.3, 0.0, 1.1}) {
    const cplx fhat = std::exp(-0.5 * xi * xi);
    CHECK(std::abs(transport_profile(spec, circ, 0.0, xi) - fhat) < 1e-15);
    CHECK(std::abs(transport_profile(spec, flat, 1.5, xi) - fhat) < 1e-14);
    const auto& s = circ.at(1.5);
    const double em = std::exp(s.mu);
    CHECK(std::abs(transport_profile(spec, circ, 1.5, xi)) ==
          Approx(std::exp(s.mu / 2.0) * std::exp(-0.5 * em * em * xi * xi)));
  }
}

TEST_CASE("transport profile is an L2 isometry") {
  const WavepacketSpec spec = gaussian_spec(0.7);
  const CoefficientTrack tr = build_track(test::wall("flat"), test::field("tanh_ramp"), {3.0, 0.0}, 4.0, 0.01);
  for (double t : {0.0, 1.0, 2.5, 4.0}) {
    std::vector<double> d;
    const double h = 0.005;
    for (double xi = -25.0; xi <= 25.0; xi += h) d.push_back(std::norm(transport_profile(spec, tr, t, xi)));
    CHECK(trapezoid(d, h) == Approx(profile_norm_sq(spec.profile)).epsilon(1e-10));
  }
}

TEST_CASE("transport residual") {
  const WavepacketSpec spec = gaussian_spec();
  CHECK(transport_residual(spec, test::flat_track(1.0, 2.0), 1.0, axis(-6.0, 6.0, 121)) < 1e-10);

  const double B = 1.0 / std::sqrt(2.0);
  const double r1 = transport_residual(spec, test::circle_track(B, 1.2, 0.02), 1.0, axis(-8.0, 8.0, 81));
  const double r2 = transport_residual(spec, test::circle_track(B, 1.2, 0.01), 1.0, axis(-8.0, 8.0, 161));
  CHECK(r1 / r2 >= 3.5);
  // one-sided stencils at t = 0
  const double e1 = transport_residual(spec, test::circle_track(B, 1.2, 0.02), 0.0, axis(-8.0, 8.0, 81));
  const double e2 = transport_residual(spec, test::circle_track(B, 1.2, 0.01), 0.0, axis(-8.0, 8.0, 161));
  CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("closed form on the flat wall reduces to the simple Gaussian") {
  const double B = 1.0;
  const CoefficientTrack tr = test::flat_track(B);
  const auto& s = tr.at(0.5);
  const double rho = std::sqrt(1.0 + B * B);
  const double gamma = B / (1.0 + B * B);
  const double sig = 1.0;
  const double q = sig + rho * gamma * gamma;
  for (Vec2 z : {Vec2{0.0, 0.0}, Vec2{0.4, -0.3}, Vec2{-1.2, 0.8}}) {
    const cplx w = z.x + cplx(0.0, s.s) * z.y;
    const cplx expected = std::pow(rho / (4.0 * test::pi), 0.25) / std::sqrt(q) *
                          std::exp(-0.5 * (rho * z.y * z.y + w * w / q));
    CHECK(std::abs(gaussian_envelope_scalar(sig, s, z) - expected) < 1e-14);
    const Spinor v = gaussian_envelope_closed_form(sig, s, z);
    CHECK(std::abs(v[0] + v[1]) < 1e-15);
  }
}

TEST_CASE("closed form at t=0 without field is an isotropic Gaussian") {
  const CoefficientTrack tr = build_track(test::wall("flat"), test::field("none"), {0.0, 0.0}, 0.1, 0.01);
  const auto& s = tr[0];
  for (Vec2 z : {Vec2{0.3, 0.1}, Vec2{-1.0, 0.5}}) {
    const cplx expected = std::pow(1.0 / (4.0 * test::pi), 0.25) * std::exp(-0.5 * (z.x * z.x + z.y * z.y));
    CHECK(std::abs(gaussian_envelope_scalar(1.0, s, z) - expected) < 1e-15);
  }
}

TEST_CASE("closed form matches quadrature") {
  const WavepacketSpec spec = gaussian_spec();
  const auto z1 = axis(-6.0, 6.0, 61);
  const auto z2 = axis(-5.0, 5.0, 41);
  for (const CoefficientTrack& tr : {test::flat_track(1.0), test::circle_track(1.0 / std::sqrt(2.0)),
                                     test::circle_track(1.5)}) {
    for (double t : {0.0, 0.5, 1.0}) {
      const EnvelopeField f = envelope_numeric(spec, tr, t, z1, z2);
      const double peak = f.max_abs();
      double worst = 0.0;
      for (std::size_t j = 0; j < z2.size(); ++j) {
        for (std::size_t i = 0; i < z1.size(); ++i) {
          worst = std::max(worst, std::abs(f(i, j) - gaussian_envelope_scalar(1.0, tr.at(t), {z1[i], z2[j]})));
        }
      }
      CHECK(worst / peak < 1e-8);
    }
  }
}

TEST_CASE("envelope_numeric is unitary and handles zero profiles") {
  WavepacketSpec spec = gaussian_spec();
  const CoefficientTrack tr = test::circle_track(1.0 / std::sqrt(2.0), 3.0);
  const auto z = axis(-14.0, 14.0, 281);
  for (double t : {0.0, 1.5, 3.0}) {
    const EnvelopeField f = envelope_numeric(spec, tr, t, z, z);
    CHECK(f.l2_norm() == Approx(std::sqrt(profile_norm_sq(spec.profile))).epsilon(1e-8));
  }
  spec.profile = SampledProfile{-2.0, 0.5, std::vector<cplx>(9, cplx{})};
  const EnvelopeField zero = envelope_numeric(spec, tr, 1.0, z, z);
  CHECK(zero.max_abs() == 0.0);
}

TEST_CASE("envelope_numeric rejects a grid that cannot resolve the chirp") {
  const CoefficientTrack tr = test::circle_track(1.0 / std::sqrt(2.0), 3.0);
  const auto z = axis(-4.0, 4.0, 41);
  CHECK_THROWS_AS(envelope_numeric(gaussian_spec(), tr, 3.0, z, z, EnvelopeQuadrature{8}), GridResolutionError);
}

TEST_CASE("sampled profile reproduces the Gaussian") {
  WavepacketSpec g = gaussian_spec();
  WavepacketSpec s = g;
  SampledProfile p{-12.0, 0.05, {}};
  for (double xi = -12.0; xi <= 12.0 + 1e-9; xi += 0.05) p.values.emplace_back(std::exp(-0.5 * xi * xi));
  s.profile = p;
  const CoefficientTrack tr = test::circle_track(1.0 / std::sqrt(2.0));
  const auto z = axis(-5.0, 5.0, 41);
  const EnvelopeField a = envelope_numeric(g, tr, 1.0, z, z);
  const EnvelopeField b = envelope_numeric(s, tr, 1.0, z, z);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
  CHECK(worst / a.max_abs() < 1e-5);
}

TEST_CASE("sup amplitude bound") {
  const WavepacketSpec spec = gaussian_spec();
  const double f1 = profile_inverse_l1_norm(spec.profile);
  const double fh1 = profile_l1_norm(spec.profile);
  CHECK(f1 == Approx(1.0).epsilon(1e-8));
  CHECK(fh1 == Approx(std::sqrt(2.0 * test::pi)).epsilon(1e-10));

  const CoefficientTrack flat = test::flat_track(1.0, 2.0);
  CHECK(sup_amplitude_bound(flat, 0.0, f1, fh1).value == Approx(sup_amplitude_bound(flat, 2.0, f1, fh1).value));

  const CoefficientTrack circ = test::circle_track(1.0 / std::sqrt(2.0), 40.0, 0.05);
  const double b20 = sup_amplitude_bound(circ, 20.0, f1, fh1).value;
  const double b40 = sup_amplitude_bound(circ, 40.0, f1, fh1).value;
  CHECK(b20 / b40 == Approx(std::sqrt(2.0)).epsilon(0.02));

  const auto z = axis(-12.0, 12.0, 241);
  for (double t : {0.0, 1.0, 3.0, 6.0}) {
    const double amp = envelope_numeric(spec, circ, t, z, z).max_abs();
    CHECK(amp <= sup_amplitude_bound(circ, t, f1, fh1).value * (1.0 + 1e-9));
  }
}

TEST_CASE("kernel residual at spectral resolution") {
  const auto xi = axis(-6.0, 6.0, 61);
  for (const CoefficientTrack& tr : {test::flat_track(1.0), test::circle_track(1.0 / std::sqrt(2.0))}) {
    for (double t : {0.0, 1.0}) {
      CHECK(kernel_residual(GaussianProfile{1.0}, tr.at(t), xi, 128, 12.0) < 1e-8);
    }
  }
}

TEST_CASE("dispersion decay: amplitude times sqrt(nu) stays bounded") {
  const WavepacketSpec spec = gaussian_spec();
  const CoefficientTrack tr = test::circle_track(1.0 / std::sqrt(2.0), 40.0, 0.05);
  double lo = 1e300, hi = 0.0;
  for (std::size_t k = 0; k < tr.size(); k += 20) {
    const auto& s = tr[k];
    if (s.nu <= 5.0) continue;
    double amp = 0.0;
    for (double z1 = -3.0 * s.nu; z1 <= 3.0 * s.nu; z1 += s.nu / 200.0) {
      amp = std::max(amp, std::abs(gaussian_envelope_scalar(1.0, s, {z1, 0.0})));
    }
    lo = std::min(lo, amp * std::sqrt(s.nu));
    hi = std::max(hi, amp * std::sqrt(s.nu));
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo < 1.5);
}

#include <doctest.h>

#include <cmath>

#include "dirac_edge/assembler.hpp"
#include "dirac_edge/diagnostics.hpp"
#include "dirac_edge/error.hpp"
#include "helpers.hpp"

using namespace dirac_edge;
using doctest::Approx;

namespace {

bool close(const Mat2c& a, const Mat2c& b, double tol = 1e-14) {
  return std::abs(a.a11 - b.a11) < tol && std::abs(a.a12 - b.a12) < tol && std::abs(a.a21 - b.a21) < tol &&
         std::abs(a.a22 - b.a22) < tol;
}

const Mat2c sigma3{1.0, 0.0, 0.0, -1.0};

WavepacketSpec packet(double eps, Vec2 y0) {
  WavepacketSpec s;
  s.epsilon = eps;
  s.y0 = y0;
  return s;
}

GridParams grid(std::size_t n, double half) { return {n, n, -half, half, -half, half}; }

}  // namespace

TEST_CASE("spin rotation examples") {
  const SpinRotations id = spin_rotations(0.0, 0.0);
  CHECK(close(id.u3, {1.0, 0.0, 0.0, 1.0}));
  CHECK(close(id.u2, {1.0, 0.0, 0.0, 1.0}));

  const SpinRotations r = spin_rotations(test::pi, test::pi / 2.0);
  CHECK(close(r.u3, {cplx(0.0, -1.0), 0.0, 0.0, cplx(0.0, 1.0)}));
  const double h = std::sqrt(0.5);
  CHECK(close(r.u2, {h, -h, h, h}));
  CHECK(std::abs(r.u3.det() - 1.0) < 1e-14);
  CHECK(std::abs(r.u2.det() - 1.0) < 1e-14);
}

TEST_CASE("U2 conjugation diagonalizes s sigma1 + c sigma3") {
  for (double phi : {0.0, 0.3, 0.9, 1.4}) {
    const Mat2c u2 = spin_rotations(0.0, phi).u2;
    const Mat2c m{std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi)};
    CHECK(close(u2.adjoint() * m * u2, sigma3, 1e-13));
  }
}

TEST_CASE("gauge phase on simple fields") {
  const CoefficientTrack flat = test::flat_track(1.0);
  for (Vec2 x : {Vec2{0.3, 0.2}, Vec2{-1.0, 0.5}, Vec2{2.0, -0.7}}) {
    CHECK(std::abs(gauge_phase_quadratic(flat, 0.5, x)) < 1e-14);
  }
  const CoefficientTrack none =
      build_track(test::wall("circle_quadratic"), test::field("none"), {1.0, 0.0}, 1.0, 0.01);
  CHECK(gauge_phase_quadratic(none, 1.0, {0.4, 0.9}) == 0.0);

  const CoefficientTrack fl = build_track(test::wall("circle_quadratic"), test::field("flux_line", 1.0, 2.0 * test::pi),
                                          {1.0, 0.0}, 2.0 * test::pi, 2.0 * test::pi / 600.0);
  CHECK(gauge_phase_quadratic(fl, fl.t_end(), fl[fl.size() - 1].y) == Approx(2.0 * test::pi).epsilon(1e-8));
}

TEST_CASE("assembled packet matches the exact flat solution") {
  const double eps = 0.2;
  const WavepacketSpec spec = packet(eps, {0.0, 0.0});
  const GridParams g = grid(256, 8.0);
  for (double B : {0.0, 1.0, 2.0}) {
    const CoefficientTrack tr = build_track(test::wall("flat"), test::field("constant", B), {0.0, 0.0}, 1.0, 0.01);
    for (double t : {0.0, 0.5, 1.0}) {
      const SpinorGrid a = assemble_leading_order(spec, tr, t, g);
      const SpinorGrid e = exact_flat_solution(B, spec, t, g);
      CAPTURE(B);
      CHECK(l2_error(a, e) < 1e-8);
      CHECK(a.l2_norm() == Approx(std::sqrt(profile_norm_sq(spec.profile))).epsilon(1e-8));
    }
  }
}

TEST_CASE("exact flat solution moves along tau at speed c") {
  const double eps = 0.2;
  const GridParams g = grid(256, 8.0);
  for (double B : {1.0, 2.0}) {
    const double c = 1.0 / std::sqrt(1.0 + B * B);
    const SpinorGrid e = exact_flat_solution(B, packet(eps, {2.0, 0.0}), 3.0, g);
    const Vec2 com = center_of_mass(e);
    CHECK(std::abs(com.x - (2.0 - 3.0 * c)) < 2.0 * g.hx());
    CHECK(std::abs(com.y) < 2.0 * g.hy());
  }
}

TEST_CASE("tilted wall places U3 outermost") {
  // flat wall with normal (−sin a, cos a) and the tilted constant field
  const double a = 0.4;
  const double eps = 0.2;
  WallParams wp;
  wp.preset = "flat";
  wp.tilt = a;
  PotentialParams pp;
  pp.preset = "tilted_constant";
  pp.B0 = 1.0;
  pp.tilt = a;
  const DomainWall w = make_wall(wp);
  const MagneticPotential f = make_potential(pp);
  const CoefficientTrack tr = build_track(w, f, {0.0, 0.0}, 0.5, 0.01);
  const WavepacketSpec spec = packet(eps, {0.0, 0.0});
  const GridParams g = grid(128, 6.0);
  const SpinorGrid psi = assemble_leading_order(spec, tr, 0.0, g);

  // ratio ψ₂/ψ₁ at the centre should be the one of U₃U₂(1,−1)
  const auto& s = tr[0];
  const SpinRotations r = spin_rotations(s.theta, s.phi);
  const Spinor want = r.u3 * (r.u2 * Spinor{1.0, -1.0});
  const Spinor other = r.u2 * (r.u3 * Spinor{1.0, -1.0});
  const std::size_t k = psi.index(64, 64);
  const cplx ratio = psi.psi2[k] / psi.psi1[k];
  CHECK(std::abs(ratio - want[1] / want[0]) < 1e-10);
  CHECK(std::abs(ratio - other[1] / other[0]) > 1e-3);
}

TEST_CASE("window error when the packet does not fit") {
  const WavepacketSpec spec = packet(0.2, {0.0, 0.0});
  const CoefficientTrack tr = test::flat_track(1.0);
  CHECK_THROWS_AS(assemble_leading_order(spec, tr, 0.0, grid(64, 1.0)), WindowError);
}

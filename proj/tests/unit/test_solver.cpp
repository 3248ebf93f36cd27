#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "dirac_edge/aligned.hpp"
#include "dirac_edge/assembler.hpp"
#include "dirac_edge/dirac_solver.hpp"
#include "dirac_edge/error.hpp"
#include "dirac_edge/kernels.hpp"
#include "helpers.hpp"

using namespace dirac_edge;
using doctest::Approx;
namespace k = dirac_edge::kernels;

namespace {

AlignedVector<cplx> random_field(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  AlignedVector<cplx> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

SpinorGrid packet_grid(double B, double eps, const GridParams& g) {
  WavepacketSpec s;
  s.epsilon = eps;
  return exact_flat_solution(B, s, 0.0, g);
}

}  // namespace

TEST_CASE("AVX2 and scalar kernels agree") {
  if (!k::avx2_supported()) return;
  for (std::size_t n : {1u, 3u, 7u, 64u, 65u, 1000u, 4099u}) {
    auto alpha = random_field(n, 1);
    auto beta = random_field(n, 2);
    auto a1 = random_field(n, 3), a2 = random_field(n, 4);
    auto b1 = a1, b2 = a2;
    k::apply_su2_scalar(alpha.data(), beta.data(), a1.data(), a2.data(), n);
    k::apply_su2_avx2(alpha.data(), beta.data(), b1.data(), b2.data(), n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max({worst, std::abs(a1[i] - b1[i]) / (1.0 + std::abs(a1[i])),
                        std::abs(a2[i] - b2[i]) / (1.0 + std::abs(a2[i]))});
    }
    CAPTURE(n);
    CHECK(worst < 1e-14);
    const double s = k::norm_sq_scalar(a1.data(), a2.data(), n);
    const double v = k::norm_sq_avx2(a1.data(), a2.data(), n);
    CHECK(std::abs(s - v) <= 1e-14 * s);
  }
}

TEST_CASE("unitary SU(2) kernel preserves the norm") {
  const std::size_t n = 777;
  AlignedVector<cplx> alpha(n), beta(n);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 2.0 * test::pi);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    alpha[i] = std::cos(a) * std::exp(cplx(0.0, b));
    beta[i] = std::sin(a) * std::exp(cplx(0.0, c));
  }
  auto p1 = random_field(n, 5), p2 = random_field(n, 6);
  const double before = k::norm_sq(p1.data(), p2.data(), n);
  k::apply_su2(alpha.data(), beta.data(), p1.data(), p2.data(), n);
  CHECK(k::norm_sq(p1.data(), p2.data(), n) == Approx(before).epsilon(1e-13));
}

TEST_CASE("smooth_step and plateau_window") {
  CHECK(smooth_step(-0.5) == 0.0);
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(2.0) == 1.0);
  CHECK(smooth_step(0.5) == Approx(0.5));
  for (double u = 0.05; u < 1.0; u += 0.1) CHECK(smooth_step(u) + smooth_step(1.0 - u) == Approx(1.0));
  CHECK(plateau_window(0.0, -8.0, 8.0, 1.6) == 1.0);
  CHECK(plateau_window(-8.0, -8.0, 8.0, 1.6) == 0.0);
  CHECK(plateau_window(7.0, -8.0, 8.0, 1.6) < 1.0);
  CHECK(plateau_window(6.4, -8.0, 8.0, 1.6) == Approx(1.0));
}

TEST_CASE("free massless plane wave is propagated exactly") {
  // κ = 0 is not a wall; use a wall far outside the grid so the window kills it
  const GridParams g{64, 64, -4.0, 4.0, -4.0, 4.0};
  DomainWall w;
  w.name = "zero";
  w.kappa = [](Vec2) { return 0.0; };
  w.grad = [](Vec2) { return Vec2{0.0, 1.0}; };
  w.laplacian = [](Vec2) { return 0.0; };
  const double eps = 0.5;
  SolverOptions opt;
  opt.dt = 0.05;
  opt.contamination_tolerance = 1.0;
  DiracSolver solver(w, test::field("none"), eps, g, opt);
  const double kx = 2.0 * test::pi / 8.0 * 3.0;
  // eigenvector of ε k σ₁ with eigenvalue +ε k: (1, 1)/√2, energy ω = k
  SpinorGrid psi(g, 0.0, eps);
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const cplx v = std::exp(cplx(0.0, kx * g.x(i)));
      psi.psi1[psi.index(i, j)] = v;
      psi.psi2[psi.index(i, j)] = v;
    }
  }
  solver.set_state(psi);
  solver.advance(20);
  const double t = solver.time();
  double worst = 0.0;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const cplx want = std::exp(cplx(0.0, kx * g.x(i) - kx * t));
      worst = std::max(worst, std::abs(solver.state().psi1[psi.index(i, j)] - want));
    }
  }
  CHECK(t == Approx(1.0));
  CHECK(worst < 1e-12);
}

TEST_CASE("norm drift and second-order convergence on the flat wall") {
  const double eps = 0.2;
  const double B = 1.0;
  const GridParams g{128, 128, -6.0, 6.0, -6.0, 6.0};
  const SpinorGrid psi0 = packet_grid(B, eps, g);
  WavepacketSpec spec;
  spec.epsilon = eps;
  const SpinorGrid exact = exact_flat_solution(B, spec, 0.8, g);
  auto run = [&](double dt) {
    SolverOptions opt;
    opt.dt = dt;
    DiracSolver s(test::wall("flat"), test::field("constant", B), eps, g, opt);
    s.set_state(psi0);
    s.advance(static_cast<std::size_t>(std::llround(0.8 / dt)));
    return s;
  };
  const DiracSolver a = run(0.04);
  const DiracSolver b = run(0.02);
  CHECK(std::abs(b.state().l2_norm() - psi0.l2_norm()) < 1e-12);
  const double ea = l2_error(a.state(), exact);
  const double eb = l2_error(b.state(), exact);
  CHECK(ea / eb == Approx(4.0).epsilon(0.15));
}

TEST_CASE("fused advance equals repeated step") {
  const double eps = 0.2;
  const GridParams g{64, 64, -6.0, 6.0, -6.0, 6.0};
  SolverOptions opt;
  opt.dt = 0.02;
  DiracSolver a(test::wall("flat"), test::field("constant", 1.0), eps, g, opt);
  DiracSolver b(test::wall("flat"), test::field("constant", 1.0), eps, g, opt);
  const SpinorGrid psi0 = packet_grid(1.0, eps, g);
  a.set_state(psi0);
  b.set_state(psi0);
  a.advance(10);
  for (int i = 0; i < 10; ++i) b.step();
  CHECK(l2_error(a.state(), b.state()) < 1e-12);
}

TEST_CASE("boundary contamination is detected") {
  const double eps = 0.2;
  const GridParams g{64, 64, -3.0, 3.0, -3.0, 3.0};
  SolverOptions opt;
  opt.dt = 0.02;
  DiracSolver s(test::wall("flat"), test::field("none"), eps, g, opt);
  s.set_state(packet_grid(0.0, eps, g));
  CHECK_NOTHROW(s.check_boundary());
  CHECK_THROWS_AS(evolve(s, 3.0, 0.1), BoundaryContamination);
}

TEST_CASE("evolve rejects a cadence that is not a whole number of steps") {
  const GridParams g{64, 64, -6.0, 6.0, -6.0, 6.0};
  SolverOptions opt;
  opt.dt = 0.03;
  DiracSolver s(test::wall("flat"), test::field("constant", 1.0), 0.2, g, opt);
  s.set_state(packet_grid(1.0, 0.2, g));
  CHECK_THROWS(evolve(s, 0.5, 0.1));
}

TEST_CASE("evolve records samples and calls observers") {
  const GridParams g{64, 64, -6.0, 6.0, -6.0, 6.0};
  SolverOptions opt;
  opt.dt = 0.02;
  DiracSolver s(test::wall("flat"), test::field("constant", 1.0), 0.2, g, opt);
  s.set_state(packet_grid(1.0, 0.2, g));
  int calls = 0;
  const ObservableSeries series = evolve(s, 0.4, 0.1, {[&](const SpinorGrid&) { ++calls; }});
  CHECK(series.size() == 5);
  CHECK(calls == 5);
  CHECK(series.t.back() == Approx(0.4));
}

TEST_CASE("set_state rejects a different grid") {
  DiracSolver s(test::wall("flat"), test::field("none"), 0.2, GridParams{64, 64, -4.0, 4.0, -4.0, 4.0});
  CHECK_THROWS_AS(s.set_state(SpinorGrid(GridParams{32, 32, -4.0, 4.0, -4.0, 4.0})), GridMismatch);
}

TEST_CASE("default dt formula") {
  CHECK(DiracSolver::default_dt(0.2, 2.0, 0.1) == Approx(std::min(0.02, 0.2 * 0.2 * 0.1 / test::pi)));
}

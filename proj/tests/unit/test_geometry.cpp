#include <doctest.h>

#include <cmath>

#include "dirac_edge/error.hpp"
#include "dirac_edge/geometry.hpp"
#include "helpers.hpp"

using namespace dirac_edge;
using doctest::Approx;

TEST_CASE("eval_wall on the preset walls") {
  const WallEval flat = eval_wall(test::wall("flat"), {3.0, 0.0});
  CHECK(flat.kappa == 0.0);
  CHECK(flat.grad == Vec2{0.0, 1.0});
  CHECK(flat.laplacian == 0.0);

  const WallEval lg = eval_wall(test::wall("circle_log"), {1.0, 0.0});
  CHECK(lg.kappa == Approx(0.0));
  CHECK(lg.grad.x == Approx(1.0));
  CHECK(lg.grad.y == Approx(0.0));
  CHECK(lg.laplacian == Approx(0.0));

  const WallEval q = eval_wall(test::wall("circle_quadratic"), {0.0, 1.0});
  CHECK(q.kappa == Approx(0.0));
  CHECK(q.grad.x == Approx(0.0));
  CHECK(q.grad.y == Approx(1.0));
  CHECK(q.laplacian == Approx(2.0));
}

TEST_CASE("analytic and finite-difference gradients agree") {
  for (const char* name : {"flat", "circle_log", "circle_quadratic", "circle_power_m", "tanh_bend"}) {
    DomainWall w = test::wall(name, 4.0);
    DomainWall fd = w;
    fd.grad = nullptr;
    fd.laplacian = nullptr;
    fd.hessian = nullptr;
    for (Vec2 x : {Vec2{0.7, 0.4}, Vec2{-1.2, 0.9}, Vec2{0.3, -1.5}}) {
      const WallEval a = eval_wall(w, x);
      const WallEval b = eval_wall(fd, x);
      CAPTURE(name);
      CHECK(b.grad.x == Approx(a.grad.x).epsilon(1e-7));
      CHECK(b.grad.y == Approx(a.grad.y).epsilon(1e-7));
      CHECK(b.laplacian == Approx(a.laplacian).epsilon(1e-3));
    }
  }
}

TEST_CASE("non-finite wall values are rejected") {
  DomainWall w;
  w.kappa = [](Vec2 x) { return std::log(x.x); };
  CHECK_THROWS_AS(eval_wall(w, {-1.0, 0.0}), InvalidWall);
}

TEST_CASE("unit_fields examples") {
  UnitFields u = unit_fields(test::wall("flat"), {0.0, 0.0});
  CHECK(u.n == Vec2{0.0, 1.0});
  CHECK(u.tau == Vec2{-1.0, 0.0});

  u = unit_fields(test::wall("circle_log"), {0.0, 1.0});
  CHECK(u.n.x == Approx(0.0));
  CHECK(u.n.y == Approx(1.0));
  CHECK(u.tau.x == Approx(-1.0));
  CHECK(u.tau.y == Approx(0.0));

  u = unit_fields(test::wall("circle_log"), {1.0, 0.0});
  CHECK(u.n.x == Approx(1.0));
  CHECK(u.tau.y == Approx(1.0));

  CHECK_THROWS_AS(unit_fields(test::wall("circle_quadratic"), {0.0, 0.0}), DegenerateGradient);
}

TEST_CASE("project_to_interface examples") {
  Vec2 y = project_to_interface(test::wall("flat"), {2.0, 0.3});
  CHECK(y.x == Approx(2.0));
  CHECK(std::abs(y.y) < 1e-12);

  y = project_to_interface(test::wall("circle_log"), {2.0, 0.0});
  CHECK(y.x == Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(y.y) < 1e-12);

  y = project_to_interface(test::wall("circle_quadratic"), {0.0, -3.0});
  CHECK(y.y == Approx(-1.0).epsilon(1e-10));

  for (const char* name : {"flat", "circle_log", "circle_quadratic", "circle_power_m", "tanh_bend"}) {
    const DomainWall w = test::wall(name, 4.0);
    const Vec2 p = project_to_interface(w, {0.8, 0.3});
    CHECK(std::abs(w.kappa(p)) < 1e-10);
    CHECK(norm(wall_gradient(w, p)) > 1e-8);
  }
}

TEST_CASE("projection failure is reported") {
  DomainWall w;
  w.name = "no zero";
  w.kappa = [](Vec2 x) { return 1.0 + x.x * x.x; };
  CHECK_THROWS_AS(project_to_interface(w, {0.5, 0.0}), Error);
}

TEST_CASE("curvature examples") {
  CHECK(curvature(test::wall("flat"), {0.0, 0.0}) == Approx(0.0));
  CHECK(curvature(test::wall("circle_log"), {1.0, 0.0}) == Approx(1.0).epsilon(1e-8));
  CHECK(curvature(test::wall("circle_quadratic", 2.0, 2.0), {2.0, 0.0}) == Approx(0.5).epsilon(1e-8));
  // Hessian route against the finite-difference route
  const DomainWall w = test::wall("circle_power_m", 4.0);
  const Vec2 y = project_to_interface(w, {0.6, 0.8});
  CHECK(turning_rate(w, y) == Approx(turning_rate_fd(w, y)).epsilon(1e-6));
}

TEST_CASE("integrate_center examples") {
  const Trajectory flat = integrate_center(test::wall("flat"), test::field("none"), {0.0, 0.0}, 1.0, 0.01);
  CHECK(flat.points.back().y.x == Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(flat.points.back().y.y) < 1e-12);

  const Trajectory b2 = integrate_center(test::wall("flat"), test::field("constant", 2.0), {0.0, 0.0}, 1.0, 0.01);
  CHECK(norm(b2.points.back().y - b2.points.front().y) == Approx(1.0 / std::sqrt(5.0)).epsilon(1e-10));

  const Trajectory circ =
      integrate_center(test::wall("circle_log"), test::field("none"), {1.0, 0.0}, 2.0 * test::pi, 0.01);
  double worst = 0.0;
  for (const auto& p : circ.points) worst = std::max(worst, std::abs(norm(p.y) - 1.0));
  CHECK(worst < 1e-8);
}

TEST_CASE("frame invariants along a trajectory") {
  const DomainWall w = test::wall("circle_quadratic");
  const MagneticPotential f = test::field("constant_circle", 1.0 / std::sqrt(2.0));
  const double dt = 0.01;
  const Trajectory tr = integrate_center(w, f, {1.0, 0.0}, 10.0, dt);
  double c_max = 0.0, k_max = 0.0;
  for (const auto& p : tr.points) {
    c_max = std::max(c_max, edge_speed(w, f, p.y));
    k_max = std::max(k_max, p.curvature);
  }
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    const FramePoint& p = tr.points[k];
    CHECK(std::abs(norm(p.n) - 1.0) < 1e-12);
    CHECK(std::abs(norm(p.tau) - 1.0) < 1e-12);
    CHECK(norm(p.tau - quarter_turn(p.n)) < 1e-12);
    const Vec2 e2 = clockwise_rotation(p.theta) * p.n;
    CHECK(std::abs(e2.x) < 1e-8);
    CHECK(std::abs(e2.y - 1.0) < 1e-8);
    CHECK(std::abs(w.kappa(p.y)) < 1e-6);
    if (k > 0) CHECK(std::abs(p.theta - tr.points[k - 1].theta) < 1.5 * c_max * k_max * dt);
    // atan2 cross-check modulo 2π
    const double wrapped = std::remainder(p.theta - frame_angle(p.n), 2.0 * test::pi);
    CHECK(std::abs(wrapped) < 1e-8);
  }
  // θ̇ > 0 on a circle with B > 0
  CHECK(tr.points.back().theta > tr.points.front().theta);
}

TEST_CASE("speed law: sample differences match c") {
  const DomainWall w = test::wall("circle_quadratic");
  const MagneticPotential f = test::field("constant_circle", 1.5);
  const double dt = 0.01;
  const Trajectory tr = integrate_center(w, f, {1.0, 0.0}, 2.0, dt);
  for (std::size_t k = 1; k + 1 < tr.points.size(); k += 17) {
    const double v = norm(tr.points[k + 1].y - tr.points[k - 1].y) / (2.0 * dt);
    CHECK(v == Approx(edge_speed(w, f, tr.points[k].y)).epsilon(1e-4));
  }
}

TEST_CASE("RK4 order on a curved wall") {
  const DomainWall w = test::wall("tanh_bend");
  const MagneticPotential f = test::field("constant", 0.5);
  const Vec2 y0 = project_to_interface(w, {2.0, 0.0});
  const double T = 2.0;
  const Trajectory ref = integrate_center(w, f, y0, T, 0.1 / 8.0);
  auto err = [&](double dt) {
    const Trajectory tr = integrate_center(w, f, y0, T, dt);
    double e = 0.0;
    const std::size_t stride = static_cast<std::size_t>(std::llround(dt / ref.dt));
    for (std::size_t k = 0; k < tr.points.size(); ++k) {
      e = std::max(e, norm(tr.points[k].y - ref.points[k * stride].y));
    }
    return e;
  };
  const double e1 = err(0.1);
  const double e2 = err(0.05);
  CHECK(e1 / e2 >= 12.0);
}

#include "dirac_edge/presets.hpp"

#include <cmath>
#include <numbers>

#include "dirac_edge/dirac_solver.hpp"
#include "dirac_edge/error.hpp"

namespace dirac_edge {

namespace {

constexpr double kPi = std::numbers::pi;

double sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

// derivative of smooth_step
double smooth_step_slope(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  const double s = a + b;
  return a * b * (1.0 / (u * u) + 1.0 / ((1.0 - u) * (1.0 - u))) / (s * s);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

DomainWall flat_wall(double tilt) {
  const Vec2 n{-std::sin(tilt), std::cos(tilt)};
  DomainWall w;
  w.name = "flat";
  w.kappa = [n](Vec2 x) { return dot(n, x); };
  w.grad = [n](Vec2) { return n; };
  w.laplacian = [](Vec2) { return 0.0; };
  w.hessian = [](Vec2) { return Mat2{}; };
  return w;
}

DomainWall circle_log(double R) {
  DomainWall w;
  w.name = "circle_log";
  w.kappa = [R](Vec2 x) { return std::log(norm(x) / R); };
  w.grad = [](Vec2 x) { return x / dot(x, x); };
  w.laplacian = [](Vec2) { return 0.0; };
  w.hessian = [](Vec2 x) {
    const double r2 = dot(x, x);
    return (Mat2{r2, 0.0, 0.0, r2} - outer(x, x) * 2.0) * (1.0 / (r2 * r2));
  };
  return w;
}

DomainWall circle_power(double R, double m, const std::string& name) {
  const double scale = 1.0 / (m * std::pow(R, m - 1.0));
  DomainWall w;
  w.name = name;
  w.kappa = [R, m, scale](Vec2 x) { return (std::pow(norm(x), m) - std::pow(R, m)) * scale; };
  w.grad = [m, scale](Vec2 x) { return x * (m * scale * std::pow(norm(x), m - 2.0)); };
  w.laplacian = [m, scale](Vec2 x) { return m * m * scale * std::pow(norm(x), m - 2.0); };
  w.hessian = [m, scale](Vec2 x) {
    const double r = norm(x);
    const double a = m * scale * std::pow(r, m - 2.0);
    const double b = m * scale * (m - 2.0) * std::pow(r, m - 4.0);
    return Mat2{a, 0.0, 0.0, a} + outer(x, x) * b;
  };
  return w;
}

DomainWall tanh_bend() {
  DomainWall w;
  w.name = "tanh_bend";
  w.kappa = [](Vec2 x) { return x.y - (std::tanh(x.x) - 1.0); };
  w.grad = [](Vec2 x) { return Vec2{-sech2(x.x), 1.0}; };
  w.laplacian = [](Vec2 x) { return 2.0 * sech2(x.x) * std::tanh(x.x); };
  w.hessian = [](Vec2 x) { return Mat2{2.0 * sech2(x.x) * std::tanh(x.x), 0.0, 0.0, 0.0}; };
  return w;
}

MagneticPotential constant_B(double b) {
  MagneticPotential f;
  f.name = "constant";
  f.A = [b](Vec2 x) { return Vec2{-b * x.y, 0.0}; };
  f.grad_A = [b](Vec2) { return Mat2{0.0, 0.0, -b, 0.0}; };
  f.B = [b](Vec2) { return b; };
  f.grad_B = [](Vec2) { return Vec2{}; };
  return f;
}

MagneticPotential tilted_constant(double b, double tilt) {
  const Vec2 n{-std::sin(tilt), std::cos(tilt)};
  const Vec2 tau = quarter_turn(n);
  MagneticPotential f;
  f.name = "tilted_constant";
  f.A = [b, n, tau](Vec2 x) { return tau * (b * dot(n, x)); };
  f.grad_A = [b, n, tau](Vec2) { return outer(n, tau) * b; };
  f.B = [b](Vec2) { return b; };
  f.grad_B = [](Vec2) { return Vec2{}; };
  return f;
}

MagneticPotential flux_line(double phi, double core) {
  // A = g(r)(−x₂, x₁), g = Φ m(r) / (2π r²), m = smooth_step(r / core)
  const double k = phi / (2.0 * kPi);
  auto g_and_slope = [k, core](double r) {
    const double m = smooth_step(r / core);
    const double dm = smooth_step_slope(r / core) / core;
    return std::pair{k * m / (r * r), k * (dm / (r * r) - 2.0 * m / (r * r * r))};
  };
  auto field = [k, core](Vec2 x) {
    const double r = norm(x);
    if (r >= core || r == 0.0) return 0.0;
    return k * smooth_step_slope(r / core) / (core * r);
  };
  MagneticPotential f;
  f.name = "flux_line";
  f.A = [g_and_slope](Vec2 x) {
    const double r = norm(x);
    if (r == 0.0) return Vec2{};
    return Vec2{-x.y, x.x} * g_and_slope(r).first;
  };
  f.grad_A = [g_and_slope](Vec2 x) {
    const double r = norm(x);
    if (r == 0.0) return Mat2{};
    const auto [g, dg] = g_and_slope(r);
    const double s = dg / r;
    // (j, k) = ∂_j A_k
    return Mat2{-x.y * x.x * s, g + x.x * x.x * s, -g - x.y * x.y * s, x.x * x.y * s};
  };
  f.B = field;
  f.grad_B = [field, core](Vec2 x) {
    if (norm(x) >= core + 1e-3) return Vec2{};
    const double h = 1e-6;
    return Vec2{(field(x + Vec2{h, 0.0}) - field(x - Vec2{h, 0.0})) / (2.0 * h),
                (field(x + Vec2{0.0, h}) - field(x - Vec2{0.0, h})) / (2.0 * h)};
  };
  return f;
}

MagneticPotential constant_circle(double b) {
  MagneticPotential f;
  f.name = "constant_circle";
  f.A = [b](Vec2 x) { return Vec2{0.0, b * x.x}; };
  f.grad_A = [b](Vec2) { return Mat2{0.0, b, 0.0, 0.0}; };
  f.B = [b](Vec2) { return b; };
  f.grad_B = [](Vec2) { return Vec2{}; };
  return f;
}

MagneticPotential tanh_ramp(double b) {
  // A₁ = −B₀ x₂ (1 − tanh(x₁ − 2)), B = B₀(1 − tanh(x₁ − 2))
  MagneticPotential f;
  f.name = "tanh_ramp";
  f.A = [b](Vec2 x) { return Vec2{-b * x.y * (1.0 - std::tanh(x.x - 2.0)), 0.0}; };
  f.grad_A = [b](Vec2 x) {
    return Mat2{b * x.y * sech2(x.x - 2.0), 0.0, -b * (1.0 - std::tanh(x.x - 2.0)), 0.0};
  };
  f.B = [b](Vec2 x) { return b * (1.0 - std::tanh(x.x - 2.0)); };
  f.grad_B = [b](Vec2 x) { return Vec2{-b * sech2(x.x - 2.0), 0.0}; };
  return f;
}

MagneticPotential transverse_linear(double b0, double b2) {
  // A₁ = −(B₀ + 2B₂x₂)x₂, B = B₀ + 4B₂x₂
  MagneticPotential f;
  f.name = "transverse_linear";
  f.A = [b0, b2](Vec2 x) { return Vec2{-(b0 + 2.0 * b2 * x.y) * x.y, 0.0}; };
  f.grad_A = [b0, b2](Vec2 x) { return Mat2{0.0, 0.0, -b0 - 4.0 * b2 * x.y, 0.0}; };
  f.B = [b0, b2](Vec2 x) { return b0 + 4.0 * b2 * x.y; };
  f.grad_B = [b2](Vec2) { return Vec2{0.0, 4.0 * b2}; };
  return f;
}

MagneticPotential periodic(double b0, double b2, double period) {
  // A₁ = −(B₀x₂ + 2B₂ cos(kx₁) x₂²), B = B₀ + 4B₂ cos(kx₁) x₂
  const double k = 2.0 * kPi / period;
  MagneticPotential f;
  f.name = "periodic";
  f.A = [b0, b2, k](Vec2 x) { return Vec2{-(b0 * x.y + 2.0 * b2 * std::cos(k * x.x) * x.y * x.y), 0.0}; };
  f.grad_A = [b0, b2, k](Vec2 x) {
    return Mat2{2.0 * b2 * k * std::sin(k * x.x) * x.y * x.y, 0.0, -b0 - 4.0 * b2 * std::cos(k * x.x) * x.y, 0.0};
  };
  f.B = [b0, b2, k](Vec2 x) { return b0 + 4.0 * b2 * std::cos(k * x.x) * x.y; };
  f.grad_B = [b2, k](Vec2 x) {
    return Vec2{-4.0 * b2 * k * std::sin(k * x.x) * x.y, 4.0 * b2 * std::cos(k * x.x)};
  };
  return f;
}

}  // namespace

const std::vector<std::string>& wall_presets() {
  static const std::vector<std::string> names{"flat", "circle_log", "circle_quadratic", "circle_power_m",
                                              "tanh_bend"};
  return names;
}

const std::vector<std::string>& potential_presets() {
  static const std::vector<std::string> names{"none",      "constant",          "tilted_constant", "flux_line",
                                              "constant_circle", "tanh_ramp", "transverse_linear", "periodic"};
  return names;
}

DomainWall make_wall(const WallParams& p) {
  if (p.preset == "flat") return flat_wall(p.tilt);
  require(p.R > 0.0 && std::isfinite(p.R), "wall: R must be positive");
  if (p.preset == "circle_log") return circle_log(p.R);
  if (p.preset == "circle_quadratic") return circle_power(p.R, 2.0, "circle_quadratic");
  if (p.preset == "circle_power_m") {
    require(p.m >= 2.0 && std::isfinite(p.m), "wall: m must be >= 2");
    return circle_power(p.R, p.m, "circle_power_m");
  }
  if (p.preset == "tanh_bend") return tanh_bend();
  throw ConfigError("unknown wall preset '" + p.preset + "'");
}

MagneticPotential make_potential(const PotentialParams& p) {
  require(std::isfinite(p.B0) && std::isfinite(p.B2) && std::isfinite(p.Phi), "potential: non-finite parameter");
  if (p.preset == "none") return MagneticPotential{"none", {}, {}, {}, {}};
  if (p.preset == "constant") return constant_B(p.B0);
  if (p.preset == "tilted_constant") return tilted_constant(p.B0, p.tilt);
  if (p.preset == "flux_line") {
    require(p.core_radius > 0.0, "potential: core_radius must be positive");
    return flux_line(p.Phi, p.core_radius);
  }
  if (p.preset == "constant_circle") return constant_circle(p.B0);
  if (p.preset == "tanh_ramp") return tanh_ramp(p.B0);
  if (p.preset == "transverse_linear") return transverse_linear(p.B0, p.B2);
  if (p.preset == "periodic") {
    require(p.period > 0.0, "potential: period must be positive");
    return periodic(p.B0, p.B2, p.period);
  }
  throw ConfigError("unknown potential preset '" + p.preset + "'");
}

}  // namespace dirac_edge

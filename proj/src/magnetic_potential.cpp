#include "dirac_edge/magnetic_potential.hpp"

#include "dirac_edge/error.hpp"

namespace dirac_edge {

Vec2 potential(const MagneticPotential& field, Vec2 x) {
  if (!field.A) return {};
  return field.A(x);
}

Mat2 potential_gradient(const MagneticPotential& field, Vec2 x) {
  if (field.grad_A) return field.grad_A(x);
  if (!field.A) return {};
  const double h = fd_step(x);
  const Vec2 d1 = (field.A(x + Vec2{h, 0.0}) - field.A(x - Vec2{h, 0.0})) / (2.0 * h);
  const Vec2 d2 = (field.A(x + Vec2{0.0, h}) - field.A(x - Vec2{0.0, h})) / (2.0 * h);
  return {d1.x, d1.y, d2.x, d2.y};
}

double curl_fd(const MagneticPotential& field, Vec2 x) {
  if (!field.A) return 0.0;
  const double h = fd_step(x);
  const double d1A2 = (field.A(x + Vec2{h, 0.0}).y - field.A(x - Vec2{h, 0.0}).y) / (2.0 * h);
  const double d2A1 = (field.A(x + Vec2{0.0, h}).x - field.A(x - Vec2{0.0, h}).x) / (2.0 * h);
  return d1A2 - d2A1;
}

double field_strength(const MagneticPotential& field, Vec2 x) {
  if (field.B) return field.B(x);
  if (field.grad_A) {
    const Mat2 g = field.grad_A(x);
    return g.a12 - g.a21;
  }
  return curl_fd(field, x);
}

Vec2 field_gradient(const MagneticPotential& field, Vec2 x) {
  if (field.grad_B) return field.grad_B(x);
  // B itself may already be a difference quotient; a wider step keeps the
  // nested quotient above round-off.
  const double h = (field.B || field.grad_A) ? fd_step(x) : 1e-3 * (1.0 + norm(x));
  const double bx = (field_strength(field, x + Vec2{h, 0.0}) - field_strength(field, x - Vec2{h, 0.0})) / (2.0 * h);
  const double by = (field_strength(field, x + Vec2{0.0, h}) - field_strength(field, x - Vec2{0.0, h})) / (2.0 * h);
  const Vec2 g{bx, by};
  if (!is_finite(g)) throw NumericalError("field_gradient: non-finite value");
  return g;
}

}  // namespace dirac_edge

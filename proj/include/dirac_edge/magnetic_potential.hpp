#pragma once

#include <functional>
#include <string>

#include "dirac_edge/vec2.hpp"

namespace dirac_edge {

/// Evaluator bundle for a vector potential A and the field B = ∂₁A₂ − ∂₂A₁.
/// Only `A` is mandatory; missing derivatives fall back to centered
/// finite differences.
struct MagneticPotential {
  std::string name;
  std::function<Vec2(Vec2)> A;
  /// (j, k) entry is ∂_j A_k.
  std::function<Mat2(Vec2)> grad_A;
  std::function<double(Vec2)> B;
  std::function<Vec2(Vec2)> grad_B;
};

/// Finite-difference step used for every derivative fallback.
inline double fd_step(Vec2 x) { return 1e-5 * (1.0 + norm(x)); }

Vec2 potential(const MagneticPotential& field, Vec2 x);
Mat2 potential_gradient(const MagneticPotential& field, Vec2 x);
double field_strength(const MagneticPotential& field, Vec2 x);
Vec2 field_gradient(const MagneticPotential& field, Vec2 x);

/// Curl of A by centered differences, independent of any analytic B.
double curl_fd(const MagneticPotential& field, Vec2 x);

}  // namespace dirac_edge

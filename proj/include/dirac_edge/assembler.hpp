#pragma once

#include <complex>

#include "dirac_edge/coefficients.hpp"
#include "dirac_edge/envelope.hpp"
#include "dirac_edge/spinor_grid.hpp"

namespace dirac_edge {

/// Complex 2x2 matrix acting on spinors.
struct Mat2c {
  cplx a11, a12, a21, a22;

  Spinor operator*(const Spinor& v) const { return {a11 * v[0] + a12 * v[1], a21 * v[0] + a22 * v[1]}; }
  Mat2c operator*(const Mat2c& m) const {
    return {a11 * m.a11 + a12 * m.a21, a11 * m.a12 + a12 * m.a22, a21 * m.a11 + a22 * m.a21,
            a21 * m.a12 + a22 * m.a22};
  }
  Mat2c adjoint() const { return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)}; }
  cplx det() const { return a11 * a22 - a12 * a21; }
};

struct SpinRotations {
  Mat2c u3;  // diag(e^{−iθ/2}, e^{iθ/2})
  Mat2c u2;  // [[cos φ/2, −sin φ/2], [sin φ/2, cos φ/2]]
};

SpinRotations spin_rotations(double theta, double phi);

/// χ₂(t, x) = ∫₀ᵗ ẏ·A + A(y_t)·d + q·dᵀ(∇Aᵀ − B n τᵀ)d with d = x − y_t.
double gauge_phase_quadratic(const TrackSample& s, Vec2 x, double q = 0.5);
double gauge_phase_quadratic(const CoefficientTrack& track, double t, Vec2 x, double q = 0.5);

struct AssemblyOptions {
  double q = 0.5;
  /// Relative mass missing from the grid above which WindowError is raised.
  double window_tolerance = 1e-8;
};

/// Ψ₀(t, x) = ε^{−1/2} e^{iχ₂/ε} U₃U₂ (𝒱_t a₀)(R_θ (x − y_t)/√ε).
/// Gaussian profiles are evaluated in closed form at every node; sampled
/// profiles go through envelope_numeric and bicubic interpolation.
SpinorGrid assemble_leading_order(const WavepacketSpec& spec, const CoefficientTrack& track, double t,
                                  const GridParams& grid, AssemblyOptions opt = {});

/// Non-dispersive solution for κ = x₂, A = −B x₂ e₁, translated by c t τ
/// with τ = −e₁. The ξ-integral is done by quadrature for any profile.
SpinorGrid exact_flat_solution(double B, const WavepacketSpec& spec, double t, const GridParams& grid);

}  // namespace dirac_edge

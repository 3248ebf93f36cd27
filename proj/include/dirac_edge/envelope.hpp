#pragma once

#include <array>
#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "dirac_edge/coefficients.hpp"
#include "dirac_edge/vec2.hpp"

namespace dirac_edge {

using cplx = std::complex<double>;
using Spinor = std::array<cplx, 2>;

/// f̂(ξ) = exp(−σ ξ² / 2)
struct GaussianProfile {
  double sigma = 1.0;
};

/// f̂ sampled on a uniform ξ grid, zero outside it; cubic interpolation
/// between nodes.
struct SampledProfile {
  double xi0 = 0.0;
  double dxi = 0.0;
  std::vector<cplx> values;
};

using Profile = std::variant<GaussianProfile, SampledProfile>;

struct WavepacketSpec {
  double epsilon = 0.2;
  Vec2 y0;
  Profile profile = GaussianProfile{};
};

/// Throws std::invalid_argument when ε ∉ (0, 1], σ <= 0, or a sampled
/// profile does not decay below 1e-12 at its ends.
void validate(const WavepacketSpec& spec);

cplx profile_value(const Profile& profile, double xi);
/// ‖f̂‖²_{L²}
double profile_norm_sq(const Profile& profile);
/// ‖f̂‖_{L¹}
double profile_l1_norm(const Profile& profile);
/// ‖f‖_{L¹} for f(z₁) = (2π)⁻¹ ∫ e^{i z₁ ξ} f̂(ξ) dξ.
double profile_inverse_l1_norm(const Profile& profile);

/// φ_t(ζ) = (ρ/4π)^{1/4} e^{−ρζ²/2} (1, −1)ᵀ
std::array<double, 2> hermite_ground(double rho, double zeta);

/// f₀(t, ξ) = exp(iλ + i(ν/2)(e^μ ξ)²) e^{μ/2} f̂(e^μ ξ)
cplx transport_profile(const Profile& profile, const TrackSample& s, double xi);
cplx transport_profile(const WavepacketSpec& spec, const CoefficientTrack& track, double t, double xi);

/// Max-norm of the transport operator applied to f₀ on a uniform ξ grid, with
/// fourth-order differences in t (track spacing) and ξ (grid spacing).
/// One-sided stencils at both ends of both axes.
double transport_residual(const WavepacketSpec& spec, const CoefficientTrack& track, double t,
                          std::span<const double> xi_grid);

/// Scalar u with 𝒱_t a₀(z) = u(z)·(1, −1)ᵀ for a Gaussian profile.
cplx gaussian_envelope_scalar(double sigma, const TrackSample& s, Vec2 z);
Spinor gaussian_envelope_closed_form(double sigma, const TrackSample& s, Vec2 z);
Spinor gaussian_envelope_closed_form(double sigma, const CoefficientTrack& track, double t, Vec2 z);

/// Scalar envelope on a tensor (z₁, z₂) grid; the spinor is values·(1, −1)ᵀ.
struct EnvelopeField {
  std::vector<double> z1;
  std::vector<double> z2;
  /// values[j * z1.size() + i] at (z1[i], z2[j])
  std::vector<cplx> values;
  bool one_minus_one_spinor = true;

  cplx operator()(std::size_t i, std::size_t j) const { return values[j * z1.size() + i]; }
  /// Spinor L² norm by the trapezoid rule (uniform axes).
  double l2_norm() const;
  double max_abs() const;
};

struct EnvelopeQuadrature {
  /// Number of ξ nodes; 0 picks a grid with four nodes per Nyquist interval.
  std::size_t n_xi = 0;
};

/// 𝒱_t a₀(z) = (2π)^{−1/2} ∫ e^{i z₁ ξ} f₀(t, ξ) φ_t(z₂ + γ_t ξ) dξ by the
/// trapezoid rule on ξ truncated where |f₀| < 1e-14. Throws
/// GridResolutionError when Δξ·(|z₁|max + |ν| e^{2μ} ξmax) >= π.
EnvelopeField envelope_numeric(const WavepacketSpec& spec, const CoefficientTrack& track, double t,
                               std::span<const double> z1, std::span<const double> z2, EnvelopeQuadrature opt = {});

struct AmplitudeBound {
  double dispersive_constant = 0.0;  // C with bound C‖f‖₁/|ν|^{1/2}
  double smooth_constant = 0.0;      // C' with bound C'‖f̂‖₁
  double value = 0.0;
};

/// Bound on sup_z |𝒱_t a₀| per spinor component. C = |G_t(0)|·|ν|^{1/2}
/// with |G_t(0)| = (ρ/4π)^{1/4}(e^μ/|Q_t|)^{1/2}, Q_t = sγ − i e^{2μ}ν;
/// C' = (ρ/4π)^{1/4} e^{−μ/2} (2π)^{−1/2}.
AmplitudeBound sup_amplitude_bound(const CoefficientTrack& track, double t, double f_l1_norm, double fhat_l1_norm);

/// max |T₀ a₀| over a (ξ, ζ) grid, T₀ = c(1+σ₁)ξ + D_ζ σ₂ + ρζ σ₃, with
/// a₀ = f₀(t, ξ) φ_t(ζ) and D_ζ applied by FFT on a periodic ζ grid.
double kernel_residual(const Profile& profile, const TrackSample& s, std::span<const double> xi_grid,
                       std::size_t n_zeta, double zeta_half_width);

}  // namespace dirac_edge

#pragma once

#include <complex>
#include <cstddef>

namespace dirac_edge::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// Pointwise SU(2) action with U = [[α, β], [−β*, α*]]:
///   ψ₁ ← αψ₁ + βψ₂,  ψ₂ ← −β*ψ₁ + α*ψ₂.
/// α and β may carry a common real scale (the FFT normalization).
void apply_su2_scalar(const cplx* alpha, const cplx* beta, cplx* psi1, cplx* psi2, std::size_t n);
void apply_su2_avx2(const cplx* alpha, const cplx* beta, cplx* psi1, cplx* psi2, std::size_t n);

/// Σ |ψ₁|² + |ψ₂|², accumulated in blocks of 64 points so the sum does not
/// depend on how callers split the range.
double norm_sq_scalar(const cplx* psi1, const cplx* psi2, std::size_t n);
double norm_sq_avx2(const cplx* psi1, const cplx* psi2, std::size_t n);

bool avx2_supported();

/// AVX2 when the CPU has it and DIRAC_EDGE_SIMD is not "scalar".
Isa active_isa();
const char* isa_name(Isa isa);

void apply_su2(const cplx* alpha, const cplx* beta, cplx* psi1, cplx* psi2, std::size_t n);
double norm_sq(const cplx* psi1, const cplx* psi2, std::size_t n);

}  // namespace dirac_edge::kernels

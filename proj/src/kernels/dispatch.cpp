#include <cstdlib>
#include <cstring>

#include "dirac_edge/kernels.hpp"

namespace dirac_edge::kernels {

namespace {

Isa detect() {
  const char* env = std::getenv("DIRAC_EDGE_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void apply_su2(const cplx* alpha, const cplx* beta, cplx* psi1, cplx* psi2, std::size_t n) {
  if (active_isa() == Isa::avx2) {
    apply_su2_avx2(alpha, beta, psi1, psi2, n);
  } else {
    apply_su2_scalar(alpha, beta, psi1, psi2, n);
  }
}

double norm_sq(const cplx* psi1, const cplx* psi2, std::size_t n) {
  return active_isa() == Isa::avx2 ? norm_sq_avx2(psi1, psi2, n) : norm_sq_scalar(psi1, psi2, n);
}

}  // namespace dirac_edge::kernels

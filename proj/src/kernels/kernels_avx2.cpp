#include "dirac_edge/kernels.hpp"
#include <complex>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define DIRAC_EDGE_HAVE_X86 1
#endif

namespace dirac_edge::kernels {

#ifdef DIRAC_EDGE_HAVE_X86

namespace {

// (a·b) for two packed complex pairs
__attribute__((target("avx2,fma"))) inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_sw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

}  // namespace

__attribute__((target("avx2,fma"))) void apply_su2_avx2(const cplx* alpha, const cplx* beta, cplx* psi1,
                                                        cplx* psi2, std::size_t n) {
  const double* a = reinterpret_cast<const double*>(alpha);
  const double* b = reinterpret_cast<const double*>(beta);
  double* p = reinterpret_cast<double*>(psi1);
  double* q = reinterpret_cast<double*>(psi2);
  // conj flips the imaginary lanes, −conj flips the real lanes
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  const __m256d negconj_mask = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);

  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(a + 2 * k);
    const __m256d vb = _mm256_loadu_pd(b + 2 * k);
    const __m256d vp = _mm256_loadu_pd(p + 2 * k);
    const __m256d vq = _mm256_loadu_pd(q + 2 * k);
    const __m256d out1 = _mm256_add_pd(cmul(va, vp), cmul(vb, vq));
    const __m256d out2 =
        _mm256_add_pd(cmul(_mm256_xor_pd(vb, negconj_mask), vp), cmul(_mm256_xor_pd(va, conj_mask), vq));
    _mm256_storeu_pd(p + 2 * k, out1);
    _mm256_storeu_pd(q + 2 * k, out2);
  }
  if (k < n) apply_su2_scalar(alpha + k, beta + k, psi1 + k, psi2 + k, n - k);
}

__attribute__((target("avx2,fma"))) double norm_sq_avx2(const cplx* psi1, const cplx* psi2, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(psi1);
  const double* q = reinterpret_cast<const double*>(psi2);
  double total = 0.0;
  for (std::size_t b = 0; b < n; b += 64) {
    const std::size_t e = b + 64 < n ? b + 64 : n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = b;
    for (; k + 2 <= e; k += 2) {
      const __m256d vp = _mm256_loadu_pd(p + 2 * k);
      const __m256d vq = _mm256_loadu_pd(q + 2 * k);
      acc = _mm256_fmadd_pd(vp, vp, acc);
      acc = _mm256_fmadd_pd(vq, vq, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double block = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; k < e; ++k) block += std::norm(psi1[k]) + std::norm(psi2[k]);
    total += block;
  }
  return total;
}

bool avx2_supported() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#else

void apply_su2_avx2(const cplx* alpha, const cplx* beta, cplx* psi1, cplx* psi2, std::size_t n) {
  apply_su2_scalar(alpha, beta, psi1, psi2, n);
}

double norm_sq_avx2(const cplx* psi1, const cplx* psi2, std::size_t n) { return norm_sq_scalar(psi1, psi2, n); }

bool avx2_supported() { return false; }

#endif

}  // namespace dirac_edge::kernels

#include "dirac_edge/kernels.hpp"

namespace dirac_edge::kernels {

void apply_su2_scalar(const cplx* alpha, const cplx* beta, cplx* psi1, cplx* psi2, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = alpha[k].real(), ai = alpha[k].imag();
    const double br = beta[k].real(), bi = beta[k].imag();
    const double pr = psi1[k].real(), pi = psi1[k].imag();
    const double qr = psi2[k].real(), qi = psi2[k].imag();
    psi1[k] = {(ar * pr - ai * pi) + (br * qr - bi * qi), (ar * pi + ai * pr) + (br * qi + bi * qr)};
    psi2[k] = {(-br * pr - bi * pi) + (ar * qr + ai * qi), (-br * pi + bi * pr) + (ar * qi - ai * qr)};
  }
}

double norm_sq_scalar(const cplx* psi1, const cplx* psi2, std::size_t n) {
  double total = 0.0;
  for (std::size_t b = 0; b < n; b += 64) {
    const std::size_t e = b + 64 < n ? b + 64 : n;
    double block = 0.0;
    for (std::size_t k = b; k < e; ++k) {
      block += psi1[k].real() * psi1[k].real() + psi1[k].imag() * psi1[k].imag() + psi2[k].real() * psi2[k].real() +
               psi2[k].imag() * psi2[k].imag();
    }
    total += block;
  }
  return total;
}

}  // namespace dirac_edge::kernels

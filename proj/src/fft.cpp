#include "dirac_edge/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "dirac_edge/aligned.hpp"

namespace dirac_edge {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Fft2d::Fft2d(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny) {
  if (nx == 0 || ny == 0) throw std::invalid_argument("Fft2d: empty grid");
  AlignedVector<std::complex<double>> scratch(nx * ny);
  std::lock_guard lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx), as_fftw(scratch.data()),
                                   as_fftw(scratch.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx), as_fftw(scratch.data()),
                                   as_fftw(scratch.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!forward_plan_ || !inverse_plan_) throw std::runtime_error("Fft2d: planning failed");
}

Fft2d::~Fft2d() {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void Fft2d::forward(std::complex<double>* data) const {
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(data), as_fftw(data));
}

void Fft2d::inverse(std::complex<double>* data) const {
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), as_fftw(data), as_fftw(data));
}

std::vector<double> fft_wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / length;
  for (std::size_t m = 0; m < n; ++m) {
    const auto mm = static_cast<long long>(m);
    const long long signed_m = m < (n + 1) / 2 ? mm : mm - static_cast<long long>(n);
    k[m] = base * static_cast<double>(signed_m);
  }
  // the Nyquist mode has no sign; drop it so derivatives of real data stay real
  if (n % 2 == 0) k[n / 2] = 0.0;
  return k;
}

std::vector<std::complex<double>> spectral_momentum(std::span<const std::complex<double>> values, double length) {
  const std::size_t n = values.size();
  AlignedVector<std::complex<double>> buf(values.begin(), values.end());
  fftw_plan fwd, inv;
  {
    std::lock_guard lock(planner_mutex());
    fwd = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(buf.data()), as_fftw(buf.data()), FFTW_FORWARD,
                           FFTW_ESTIMATE);
    inv = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(buf.data()), as_fftw(buf.data()), FFTW_BACKWARD,
                           FFTW_ESTIMATE);
  }
  fftw_execute(fwd);
  const std::vector<double> k = fft_wavenumbers(n, length);
  for (std::size_t m = 0; m < n; ++m) buf[m] *= k[m] / static_cast<double>(n);
  fftw_execute(inv);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
  }
  return {buf.begin(), buf.end()};
}

}  // namespace dirac_edge

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dirac_edge {

/// In-place 2D complex transform on row-major (ny rows of nx) data.
/// Unnormalized in both directions. Plans use FFTW_ESTIMATE so results do not
/// depend on planner timing.
class Fft2d {
 public:
  Fft2d(std::size_t nx, std::size_t ny);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }

  /// data must hold nx*ny values and be 64-byte aligned.
  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;

 private:
  std::size_t nx_;
  std::size_t ny_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

/// Angular wavenumbers 2π·m/L in FFT order (0, 1, .., n/2−1, −n/2, .., −1),
/// with the Nyquist entry set to 0 for even n.
std::vector<double> fft_wavenumbers(std::size_t n, double length);

/// −i d/dx of periodic samples on [x0, x0 + length) by FFT.
std::vector<std::complex<double>> spectral_momentum(std::span<const std::complex<double>> values, double length);

}  // namespace dirac_edge

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>

#include "dirac_edge/aligned.hpp"
#include "dirac_edge/vec2.hpp"

namespace dirac_edge {

/// Periodic tensor grid: x_i = x0 + i·(x1 − x0)/nx for i < nx (x1 itself is
/// the periodic image of x0), likewise in y.
struct GridParams {
  std::size_t nx = 256;
  std::size_t ny = 256;
  double x0 = -8.0;
  double x1 = 8.0;
  double y0 = -8.0;
  double y1 = 8.0;

  double hx() const { return (x1 - x0) / static_cast<double>(nx); }
  double hy() const { return (y1 - y0) / static_cast<double>(ny); }
  double x(std::size_t i) const { return x0 + hx() * static_cast<double>(i); }
  double y(std::size_t j) const { return y0 + hy() * static_cast<double>(j); }
  Vec2 point(std::size_t i, std::size_t j) const { return {x(i), y(j)}; }
  std::size_t size() const { return nx * ny; }
};

bool same_grid(const GridParams& a, const GridParams& b);

/// Two-component field stored as two planes, index j·nx + i.
struct SpinorGrid {
  GridParams grid;
  double t = 0.0;
  double epsilon = 0.0;
  AlignedVector<std::complex<double>> psi1;
  AlignedVector<std::complex<double>> psi2;

  SpinorGrid() = default;
  explicit SpinorGrid(const GridParams& g, double time = 0.0, double eps = 0.0);

  std::size_t index(std::size_t i, std::size_t j) const { return j * grid.nx + i; }
  double cell_area() const { return grid.hx() * grid.hy(); }
  /// Cell-weighted L² norm.
  double l2_norm() const;
};

/// Little-endian "DEWP" snapshot, version 1.
void write_snapshot(std::ostream& os, const SpinorGrid& g);
void write_snapshot(const std::string& path, const SpinorGrid& g);
/// Throws std::runtime_error on a bad magic, version or truncated stream.
SpinorGrid read_snapshot(std::istream& is);
SpinorGrid read_snapshot(const std::string& path);

}  // namespace dirac_edge

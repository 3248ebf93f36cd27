#include "dirac_edge/spinor_grid.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "dirac_edge/kernels.hpp"

namespace dirac_edge {

bool same_grid(const GridParams& a, const GridParams& b) {
  return a.nx == b.nx && a.ny == b.ny && a.x0 == b.x0 && a.x1 == b.x1 && a.y0 == b.y0 && a.y1 == b.y1;
}

SpinorGrid::SpinorGrid(const GridParams& g, double time, double eps)
    : grid(g), t(time), epsilon(eps), psi1(g.size()), psi2(g.size()) {}

double SpinorGrid::l2_norm() const {
  return std::sqrt(kernels::norm_sq(psi1.data(), psi2.data(), psi1.size()) * cell_area());
}

namespace {

template <class T>
void put(std::vector<unsigned char>& buf, T v) {
  static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t k = 0; k < sizeof(T) / 2; ++k) std::swap(b[k], b[sizeof(T) - 1 - k]);
  }
  buf.insert(buf.end(), b, b + sizeof(T));
}

template <class T>
T get(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw std::runtime_error("snapshot: truncated stream");
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t k = 0; k < sizeof(T) / 2; ++k) std::swap(b[k], b[sizeof(T) - 1 - k]);
  }
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(std::ostream& os, const SpinorGrid& g) {
  std::vector<unsigned char> buf;
  buf.reserve(56 + g.grid.size() * 32);
  buf.insert(buf.end(), {'D', 'E', 'W', 'P'});
  put<std::uint32_t>(buf, 1);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.grid.nx));
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.grid.ny));
  for (double v : {g.grid.x0, g.grid.x1, g.grid.y0, g.grid.y1, g.t, g.epsilon}) put<double>(buf, v);
  for (std::size_t k = 0; k < g.grid.size(); ++k) {
    put<double>(buf, g.psi1[k].real());
    put<double>(buf, g.psi1[k].imag());
    put<double>(buf, g.psi2[k].real());
    put<double>(buf, g.psi2[k].imag());
  }
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

void write_snapshot(const std::string& path, const SpinorGrid& g) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path);
  write_snapshot(os, g);
  if (!os) throw std::runtime_error("snapshot: write failed for " + path);
}

SpinorGrid read_snapshot(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "DEWP", 4) != 0) throw std::runtime_error("snapshot: bad magic");
  if (get<std::uint32_t>(is) != 1) throw std::runtime_error("snapshot: unsupported version");
  GridParams p;
  p.nx = get<std::uint32_t>(is);
  p.ny = get<std::uint32_t>(is);
  p.x0 = get<double>(is);
  p.x1 = get<double>(is);
  p.y0 = get<double>(is);
  p.y1 = get<double>(is);
  const double t = get<double>(is);
  const double eps = get<double>(is);
  SpinorGrid g(p, t, eps);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double a = get<double>(is);
    const double b = get<double>(is);
    const double c = get<double>(is);
    const double d = get<double>(is);
    g.psi1[k] = {a, b};
    g.psi2[k] = {c, d};
  }
  return g;
}

SpinorGrid read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path);
  return read_snapshot(is);
}

}  // namespace dirac_edge

#include <doctest.h>

#include <cmath>
#include <vector>

#include "dirac_edge/quadrature.hpp"

using namespace dirac_edge;
using doctest::Approx;

namespace {

std::vector<double> samples(double (*f)(double), double h, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = f(h * static_cast<double>(k));
  return v;
}

double max_err_cumulative(double h) {
  const std::size_t n = static_cast<std::size_t>(std::llround(2.0 / h)) + 1;
  const auto I = cumulative_simpson(samples([](double t) { return std::cos(3.0 * t); }, h, n), h);
  double e = 0.0;
  for (std::size_t k = 0; k < n; ++k) e = std::max(e, std::abs(I[k] - std::sin(3.0 * h * k) / 3.0));
  return e;
}

double max_err_derivative(double h) {
  const std::size_t n = static_cast<std::size_t>(std::llround(2.0 / h)) + 1;
  const auto d = derivative_4th(samples([](double t) { return std::exp(std::sin(t)); }, h, n), h);
  double e = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = h * k;
    e = std::max(e, std::abs(d[k] - std::cos(t) * std::exp(std::sin(t))));
  }
  return e;
}

}  // namespace

TEST_CASE("cumulative_simpson is exact for cubics past the first panel") {
  const double h = 0.1;
  const auto I = cumulative_simpson(samples([](double t) { return t * t * t - 2.0 * t + 1.0; }, h, 12), h);
  CHECK(I[0] == 0.0);
  for (std::size_t k = 2; k < I.size(); ++k) {
    const double t = h * k;
    CHECK(I[k] == Approx(t * t * t * t / 4.0 - t * t + t).epsilon(1e-12));
  }
}

TEST_CASE("cumulative_simpson fourth order") {
  CHECK(max_err_cumulative(0.1) / max_err_cumulative(0.05) > 12.0);
}

TEST_CASE("derivative_4th exact for quartics, fourth order otherwise") {
  const double h = 0.25;
  const auto d = derivative_4th(samples([](double t) { return t * t * t * t - t; }, h, 9), h);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double t = h * k;
    CHECK(d[k] == Approx(4.0 * t * t * t - 1.0).epsilon(1e-10));
  }
  CHECK(max_err_derivative(0.1) / max_err_derivative(0.05) > 12.0);
}

TEST_CASE("derivative stencils") {
  for (std::size_t i = 0; i < 7; ++i) {
    const Stencil5 s = derivative_stencil(i, 7);
    double sum = 0.0, first = 0.0;
    for (std::size_t m = 0; m < 5; ++m) {
      sum += s.w[m];
      first += s.w[m] * (static_cast<double>(s.start + m) - static_cast<double>(i));
    }
    CHECK(std::abs(sum) < 1e-12);
    CHECK(first == Approx(1.0));
    CHECK(s.start + 4 < 7);
  }
}

TEST_CASE("trapezoid") {
  CHECK(trapezoid(std::vector<double>{1.0, 1.0, 1.0}, 0.5) == Approx(1.0));
  CHECK(trapezoid(std::vector<double>{0.0, 1.0, 2.0}, 1.0) == Approx(2.0));
}

#pragma once

#include <cmath>
#include <numbers>

#include "dirac_edge/coefficients.hpp"
#include "dirac_edge/presets.hpp"

namespace test {

using namespace dirac_edge;

constexpr double pi = std::numbers::pi;

inline DomainWall wall(const char* preset, double m = 2.0, double R = 1.0, double tilt = 0.0) {
  WallParams p;
  p.preset = preset;
  p.m = m;
  p.R = R;
  p.tilt = tilt;
  return make_wall(p);
}

inline MagneticPotential field(const char* preset, double B0 = 1.0, double Phi = 0.0, double B2 = 0.0) {
  PotentialParams p;
  p.preset = preset;
  p.B0 = B0;
  p.Phi = Phi;
  p.B2 = B2;
  return make_potential(p);
}

inline CoefficientTrack flat_track(double B, double t_max = 1.0, double dt = 0.01) {
  return build_track(wall("flat"), field("constant", B), {1.0, 0.0}, t_max, dt);
}

inline CoefficientTrack circle_track(double B, double t_max = 1.0, double dt = 0.01) {
  return build_track(wall("circle_quadratic"), field("constant_circle", B), {1.0, 0.0}, t_max, dt);
}

}  // namespace test

#pragma once

#include <string>
#include <vector>

#include "dirac_edge/geometry.hpp"
#include "dirac_edge/magnetic_potential.hpp"

namespace dirac_edge {

struct WallParams {
  std::string preset = "flat";
  double tilt = 0.0;  // flat: n = (−sin tilt, cos tilt)
  double R = 1.0;
  double m = 2.0;
};

struct PotentialParams {
  std::string preset = "none";
  double B0 = 1.0;
  double Phi = 0.0;
  double B2 = 0.0;
  double core_radius = 0.2;
  double period = 15.0;
  double tilt = 0.0;  // tilted_constant: wall normal angle
};

/// flat, circle_log, circle_quadratic, circle_power_m, tanh_bend
const std::vector<std::string>& wall_presets();
/// none, constant, tilted_constant, flux_line, constant_circle, tanh_ramp,
/// transverse_linear, periodic
const std::vector<std::string>& potential_presets();

/// Throws ConfigError for an unknown preset or invalid parameters.
DomainWall make_wall(const WallParams& p);
MagneticPotential make_potential(const PotentialParams& p);

}  // namespace dirac_edge

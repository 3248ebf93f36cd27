#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dirac_edge/presets.hpp"
#include "dirac_edge/spinor_grid.hpp"
#include "dirac_edge/vec2.hpp"

namespace dirac_edge {

/// Fully resolved run configuration. Zero for t_max, dt or cadence means
/// "use the experiment default".
struct SimConfig {
  std::string experiment;
  double epsilon = 0.2;
  Vec2 y0{1.0, 0.0};
  double sigma = 1.0;
  std::string profile_file;  // CSV xi,re,im; overrides sigma when set
  double t_max = 0.0;
  double dt = 0.0;
  double cadence = 0.05;
  double q = 0.5;
  std::vector<double> sweep;
  WallParams wall;
  PotentialParams potential;
  GridParams grid{1024, 1024, -8.0, 8.0, -8.0, 8.0};
  double window = 0.1;
  std::string out_dir = "out";
  double snapshot_every = 0.0;  // 0 disables snapshots
};

/// Parses the "[section] / key = value" format. Unknown sections or keys,
/// malformed numbers and a missing [experiment] name raise ConfigError
/// with the line number; unknown keys also name the closest valid key.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::string& path);

/// Range checks on a resolved config; throws ConfigError.
void validate_config(const SimConfig& cfg);

/// Canonical text of a resolved config; parse_config(resolved_text(c))
/// reproduces c. The output directory line is optional so that echoes and
/// hashes do not depend on where a run writes.
std::string resolved_text(const SimConfig& cfg, bool include_output_dir = true);

/// FNV-1a 64 of resolved_text without the output directory.
std::uint64_t config_hash(const SimConfig& cfg);

/// Edit distance, used for key suggestions.
std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace dirac_edge

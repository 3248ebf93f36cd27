#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dirac_edge/config.hpp"
#include "dirac_edge/envelope.hpp"

namespace dirac_edge {

struct ExperimentInfo {
  std::string name;
  std::string description;
};

const std::vector<ExperimentInfo>& experiments();
bool is_experiment(const std::string& name);

/// Scenario defaults (wall, potential, grid, y0, sweep, t_max, ε) for
/// cfg.experiment. Throws ConfigError for an unknown experiment.
void apply_experiment_defaults(SimConfig& cfg);

/// Ordered key/value results of a run, written to summary.txt.
class Summary {
 public:
  void add(const std::string& key, double value);
  void add_text(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  /// Throws std::out_of_range for a missing key.
  double number(const std::string& key) const;
  std::string text() const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Loads a sampled profile from "xi,re,im" lines on a uniform ξ grid.
SampledProfile load_profile_csv(const std::string& path);

WavepacketSpec make_wavepacket(const SimConfig& cfg);

/// Time for the frame angle to advance by 2π along Γ from y0.
double revolution_time(const SimConfig& cfg);

/// Runs cfg.experiment, writing observables, tracks, snapshots,
/// summary.txt and config.resolved into cfg.out_dir.
Summary run_experiment(const SimConfig& cfg);

}  // namespace dirac_edge

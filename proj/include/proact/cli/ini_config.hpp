#pragma once

// Scenario files: INI sections whose keys mirror ScenarioConfig. A value
// holding a comma-separated list turns the key into a sweep; the file
// expands to the cross product of all sweeps, first swept key outermost.
//
//   [scenario]
//   uav_per_uavn = 5, 15, 30
//   [network.uav_gcs]
//   loss_rate = 0

#include <istream>
#include <string>
#include <vector>

#include "proact/sim/config.hpp"

namespace proact::cli {

struct SweepPoint {
  sim::ScenarioConfig cfg;
  /// "key=value" for every swept key, joined by spaces; empty without sweeps.
  std::string label;
};

/// Throws sim::ConfigError naming `section.key` for unknown keys and
/// unparsable values, or the offending field when validation fails.
std::vector<SweepPoint> parse_plan(std::istream& in);
/// As parse_plan; an unreadable file is a ConfigError on field "config".
std::vector<SweepPoint> load_plan(const std::string& path);

/// Applies one key to `cfg`; the section selects the group.
void apply_key(sim::ScenarioConfig& cfg, const std::string& section, const std::string& key, const std::string& value);

/// Every recognised "section.key", for documentation and error hints.
std::vector<std::string> known_keys();

}  // namespace proact::cli

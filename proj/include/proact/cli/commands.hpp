#pragma once

// Front-door commands behind the proact binary. Each returns a process exit
// code and writes human-readable output to `out`, diagnostics to `err`.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "proact/cli/ini_config.hpp"
#include "proact/sim/scenario.hpp"

namespace proact::cli {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitRuntime = 2, kExitSelftest = 3 };

/// Overrides --out when set.
inline constexpr const char* kOutDirEnv = "PROACT_OUT_DIR";

struct RunManifest {
  std::string config_path;
  std::vector<std::uint64_t> seeds;
  std::string out_dir;
  std::optional<sim::Mode> mode;
  bool force = false;
  /// Concurrent runs; 0 picks the hardware concurrency.
  unsigned jobs = 0;
  /// Filled in as files are written.
  std::vector<std::string> emitted;
};

/// One finished (sweep point, seed) run.
struct RunOutcome {
  std::size_t point = 0;
  std::uint64_t seed = 0;
  sim::RunResult result;
};

/// Runs every (point, seed) pair, up to `jobs` at a time, and returns the
/// outcomes ordered by (seed, point). Event-log and ground-truth paths get a
/// per-run suffix when more than one run is made.
std::vector<RunOutcome> run_all(const std::vector<SweepPoint>& plan, const std::vector<std::uint64_t>& seeds,
                                unsigned jobs);

/// "mean ± sd" with the sample standard deviation; a single value has sd 0.
std::string mean_sd(const std::vector<double>& v);

/// Writes metrics.csv and summary.txt into the output directory.
int cmd_run(RunManifest& m, std::ostream& out, std::ostream& err);

/// Runs each seed in both modes and prints paired TBD/DEC rows with the
/// sequential/parallel TBD ratio and whether the committed sets match.
/// Writes compare.csv when an output directory is given.
int cmd_compare(RunManifest& m, std::ostream& out, std::ostream& err);

struct SelftestFaults {
  /// Swaps two S-box entries before hashing the pinned vectors.
  bool corrupt_sbox = false;
};

struct SelftestCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

std::vector<SelftestCheck> run_selftest(const SelftestFaults& faults = {});
int cmd_selftest(const SelftestFaults& faults, std::ostream& out);
/// Variant, message label and hex digest of each pinned SPONGENT vector.
int cmd_selftest_vectors(std::ostream& out);

}  // namespace proact::cli

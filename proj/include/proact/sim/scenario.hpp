#pragma once

// One deterministic scenario run: topology, Genesis, workloads T1..T5,
// attacks, consensus among the TGCSs under the acting BO, block
// distribution to GCSs and drones, and the resulting metrics.

#include <cstdint>
#include <vector>

#include "proact/sim/config.hpp"
#include "proact/sim/metrics.hpp"

namespace proact::sim {

/// Invariant checks made while the run executes.
struct SafetyCounters {
  /// Commits with fewer ACKs than floor(N_TGCS/2)+1.
  std::uint64_t quorum_violations = 0;
  /// Committed blocks whose prev_hash does not match the local tip.
  std::uint64_t chain_breaks = 0;
  /// Drone ledgers found above capacity after a store.
  std::uint64_t capacity_violations = 0;
  /// Two GCS ledgers holding different blocks at the same height.
  std::uint64_t ledger_divergences = 0;

  std::uint64_t total() const {
    return quorum_violations + chain_breaks + capacity_violations + ledger_divergences;
  }
};

struct RunResult {
  MetricsRecord metrics;
  SafetyCounters safety;
  TxBook txs;
  std::vector<AttackRecord> attacks;
  /// Keys of every committed transaction, sorted.
  std::vector<wire::TxKey> committed;
  std::uint64_t chain_height = 0;
  std::uint64_t end_us = 0;
  std::uint64_t events_processed = 0;
  int tgcs_count = 0;
  int tgcs_eligible_at_end = 0;
};

/// Throws ConfigError for an invalid configuration and TopologyError for an
/// infeasible placement. Identical configurations give identical results.
RunResult run(const ScenarioConfig& cfg);

/// Transactions generated before `end - horizon_s` that are neither
/// committed nor rejected as invalid.
std::vector<wire::TxKey> uncommitted_before(const RunResult& r, double horizon_s);

}  // namespace proact::sim

#pragma once

// Per-run bookkeeping and the ADR / TBD / DEC / BTO metrics.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proact/sim/config.hpp"
#include "proact/sim/workload.hpp"

namespace proact::sim {

enum class TxFate : std::uint8_t { Pending, Committed, Rejected, Dropped };
const char* to_string(TxFate);

struct TxRecord {
  TxKind kind = TxKind::T1;
  std::uint64_t generated_us = 0;
  std::uint64_t committed_us = 0;
  TxFate fate = TxFate::Pending;
  bool malicious = false;
  /// Original data size before signing and sealing.
  std::size_t original_bytes = 0;
};

/// Fate of every generated transaction. Fates only move away from Pending
/// once; later reports are ignored.
class TxBook {
 public:
  void generated(const wire::TxKey& k, TxKind kind, std::uint64_t at_us, std::size_t original_bytes,
                 bool malicious = false);
  void committed(const wire::TxKey& k, std::uint64_t at_us);
  void rejected(const wire::TxKey& k);
  void dropped(const wire::TxKey& k);
  /// A dropped transaction that later turned up again (a retransmitted
  /// copy) goes back to Pending.
  void revived(const wire::TxKey& k);

  const TxRecord* find(const wire::TxKey& k) const;
  const std::map<wire::TxKey, TxRecord>& all() const { return txs_; }
  std::size_t count(TxFate f) const;

 private:
  std::map<wire::TxKey, TxRecord> txs_;
};

enum class AttackKind : std::uint8_t { UnauthorizedAccess = 1, FalseData = 2 };

struct AttackRecord {
  AttackKind kind = AttackKind::UnauthorizedAccess;
  wire::NodeId attacker;
  wire::NodeId target;  // access attacks
  std::uint64_t at_us = 0;
  bool detected = false;
  std::uint64_t detected_us = 0;
  std::optional<wire::TxKey> report;  // false-data attacks
};

struct MetricsRecord {
  std::uint64_t seed = 0;
  Mode mode = Mode::Parallel;
  int n_uav = 0;
  double malicious_fraction = 0;
  std::size_t data_tx_size = 0;

  /// Not applicable when no attack was injected.
  std::optional<double> adr;
  double tbd_mean_s = 0;
  std::vector<double> tbd_samples_s;
  double dec_mean_kj = 0;
  double bto_mean = 0;
  std::size_t bto_samples = 0;

  std::uint64_t txs_generated = 0;
  std::uint64_t txs_committed = 0;
  std::uint64_t txs_rejected = 0;
  std::uint64_t txs_dropped = 0;
  std::uint64_t txs_pending = 0;
  std::uint64_t attacks_injected = 0;
  std::uint64_t attacks_detected = 0;
  std::uint64_t blocks_committed = 0;
  std::uint64_t blocks_voided = 0;
  std::uint64_t packets_dropped = 0;
  std::uint64_t messages_lost = 0;
};

/// Inputs gathered while the run executes.
struct RunFacts {
  const TxBook* txs = nullptr;
  const std::vector<AttackRecord>* attacks = nullptr;
  std::vector<double> drone_consumed_j;
  /// (S_TB - S_TO) / S_TO for every BlockT1 transaction held by every drone.
  std::vector<double> bto_samples;
  std::uint64_t blocks_committed = 0;
  std::uint64_t blocks_voided = 0;
  std::uint64_t packets_dropped = 0;
  std::uint64_t messages_lost = 0;
};

/// (S_TB - S_TO) / S_TO: bytes a transaction adds on top of its data.
inline double byte_overhead(std::size_t encoded_bytes, std::size_t original_bytes) {
  const double s_to = static_cast<double>(original_bytes);
  return (static_cast<double>(encoded_bytes) - s_to) / s_to;
}

MetricsRecord compute_metrics(const ScenarioConfig& cfg, const RunFacts& facts);

/// Fixed column order; numbers printed with 6 significant digits, a
/// missing ADR as "na".
std::string csv_header();
std::string csv_row(const MetricsRecord& m);
std::string format_number(double v);

}  // namespace proact::sim

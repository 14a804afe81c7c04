#pragma once

// Scenario parameters. Defaults describe the desk-scale scenario: 1 CA,
// 5 GCSs of which 2 mine, 4 UAVNs per GCS and 10 drones per UAVN.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "proact/consensus/trust.hpp"
#include "proact/crypto/suite.hpp"
#include "proact/ledger/drone_ledger.hpp"

namespace proact::sim {

enum class Mode : std::uint8_t { Parallel, Sequential };
const char* to_string(Mode);
Mode parse_mode(const std::string& s);

enum class LinkClass : std::uint8_t { UavUav, UavGcs, GcsCa, CaCa };
const char* to_string(LinkClass);

struct LinkParams {
  double latency_s = 0;
  double bandwidth_Bps = 0;
  std::size_t queue_limit_bytes = 0;
  /// Independent per-packet loss probability per transmission attempt.
  double loss_rate = 0;
  /// Wireless classes only; 0 for wired.
  double range_m = 0;
  /// Wired links retry until delivery instead of giving up.
  bool reliable = false;
};

struct NetworkParams {
  std::array<LinkParams, 4> links{{
      {0.002, 750'000, 256 * 1024, 0.002, 300, false},     // UAV-UAV
      {0.003, 750'000, 256 * 1024, 0.002, 1000, false},    // UAV-GCS
      {0.002, 125'000'000, 64u << 20, 0.0, 0, true},       // GCS-CA
      {0.005, 1'250'000'000, 256u << 20, 0.0, 0, true},    // CA-CA
  }};
  std::size_t mtu_bytes = 1500;
  int max_retransmits = 3;
  double retransmit_timeout_s = 0.05;

  LinkParams& operator[](LinkClass c) { return links[static_cast<std::size_t>(c)]; }
  const LinkParams& operator[](LinkClass c) const { return links[static_cast<std::size_t>(c)]; }

  /// Zero loss and unbounded queues on every class.
  void make_loss_free();
};

struct EnergyParams {
  double initial_j = 3'600'000;
  double e_tx_uj_per_byte = 2;
  double e_rx_uj_per_byte = 1;
  double p_flight_w = 250;
  /// Processing cost per suite, indexed by suite_id - 1.
  std::array<crypto::CryptoCost, 3> suite_cost{{{40, 0.4}, {110, 0.9}, {420, 2.6}}};

  const crypto::CryptoCost& cost(const crypto::CryptoSuite& s) const { return suite_cost.at(s.suite_id - 1u); }
};

struct WorkloadParams {
  double t1_interval_s = 1;
  double t2_interval_s = 10;
  int t2_group_min = 5;
  int t2_group_max = 10;
  double t3_interval_s = 2;
  double t5_interval_s = 0.1;
  std::size_t control_size = 100;
};

struct ConsensusParams {
  double t_bis_s = 0.05;
  double t_blk_s = 5;
  double t_bo_s = 600;
  double assemble_interval_s = 0.1;
  std::size_t max_block_txs = 4096;
  /// Ground-station time to check one transaction's signature and layout.
  /// Measured at 170 us (S2_C1) to 360 us (S1) for a 100 B command with the
  /// bitsliced kernel on a 2.1 GHz core.
  double verify_s_per_tx = 200e-6;
  consensus::TrustParams trust;
  consensus::TrustWeights weights;
  /// Probability that a miner stalls on a finalized block instead of
  /// broadcasting it (fault injection; exercises the void path).
  double miner_stall_prob = 0;
};

struct TopologyParams {
  double gcs_spacing_m = 3000;
  double gcs_jitter_m = 300;
  double uavn_disc_radius_m = 700;
  /// Distance of each UAVN disc centre from its GCS.
  double uavn_offset_m = 250;
  double speed_min_mps = 20;
  double speed_max_mps = 30;
  int sites_per_gcs = 1;
};

struct DetectionParams {
  double r_detect_m = 300;
  double w_detect_s = 4;
};

struct ScenarioConfig {
  int n_ca = 1;
  int gcs_per_ca = 5;
  int tgcs_per_ca = 2;
  int uavn_per_gcs = 4;
  int uav_per_uavn = 10;
  double malicious_fraction = 0.2;
  std::size_t data_tx_size = 10240;
  double attack_interval_s = 10;
  double mission_min_s = 300;
  double mission_max_s = 3600;
  double sim_duration_s = 30;
  /// Extra simulated time after generation stops so in-flight work settles.
  double drain_s = 0;
  Mode mode = Mode::Parallel;
  std::uint64_t seed = 1;
  /// false forces every transaction onto the S1 suite.
  bool tiering = true;
  std::size_t drone_capacity_bytes = ledger::kDefaultDroneCapacity;
  ledger::BraPolicy bra = ledger::BraPolicy::OldestFirst;

  NetworkParams network;
  EnergyParams energy;
  WorkloadParams workload;
  ConsensusParams consensus;
  TopologyParams topology;
  DetectionParams detection;

  /// Optional outputs; empty disables.
  std::string event_log_path;
  std::string ground_truth_path;

  int n_gcs() const { return n_ca * gcs_per_ca; }
  int n_uav() const { return n_gcs() * uavn_per_gcs * uav_per_uavn; }
  int n_tgcs() const { return n_ca * tgcs_per_ca; }

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace proact::sim

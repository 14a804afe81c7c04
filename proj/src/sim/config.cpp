#include "proact/sim/config.hpp"

#include <cmath>
#include <limits>

namespace proact::sim {

const char* to_string(Mode m) { return m == Mode::Parallel ? "parallel" : "sequential"; }

Mode parse_mode(const std::string& s) {
  if (s == "parallel") return Mode::Parallel;
  if (s == "sequential") return Mode::Sequential;
  throw ConfigError("mode", "expected parallel or sequential, got '" + s + "'");
}

const char* to_string(LinkClass c) {
  switch (c) {
    case LinkClass::UavUav: return "uav_uav";
    case LinkClass::UavGcs: return "uav_gcs";
    case LinkClass::GcsCa: return "gcs_ca";
    case LinkClass::CaCa: return "ca_ca";
  }
  return "?";
}

void NetworkParams::make_loss_free() {
  for (auto& l : links) {
    l.loss_rate = 0;
    l.queue_limit_bytes = std::numeric_limits<std::size_t>::max() / 4;
  }
}

namespace {

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0; }

}  // namespace

void ScenarioConfig::validate() const {
  require(n_ca >= 1, "n_ca", "must be >= 1");
  require(gcs_per_ca >= 1, "gcs_per_ca", "must be >= 1");
  require(tgcs_per_ca >= 1, "tgcs_per_ca", "must be >= 1");
  require(tgcs_per_ca <= gcs_per_ca, "tgcs_per_ca", "cannot exceed gcs_per_ca");
  require(uavn_per_gcs >= 1, "uavn_per_gcs", "must be >= 1");
  require(uav_per_uavn >= 1, "uav_per_uavn", "must be >= 1");
  require(malicious_fraction >= 0 && malicious_fraction <= 1, "malicious_fraction", "must be within [0, 1]");
  require(data_tx_size >= 64, "data_tx_size", "must be at least 64 bytes");
  require(finite_positive(attack_interval_s), "attack_interval", "must be > 0");
  require(mission_min_s > 0 && mission_max_s >= mission_min_s, "mission_duration",
          "bounds must satisfy 0 < min <= max");
  require(mission_max_s <= 3600 || !tiering, "mission_duration",
          "missions above 3600 s have no temporary tier");
  require(finite_positive(sim_duration_s), "sim_duration", "must be > 0");
  require(drain_s >= 0, "drain", "must be >= 0");
  require(drone_capacity_bytes > 0, "drone_capacity", "must be > 0");

  for (int c = 0; c < 4; ++c) {
    const auto& l = network.links[static_cast<std::size_t>(c)];
    const char* name = to_string(static_cast<LinkClass>(c));
    require(l.latency_s >= 0, name, "latency must be >= 0");
    require(finite_positive(l.bandwidth_Bps), name, "bandwidth must be > 0");
    require(l.queue_limit_bytes >= network.mtu_bytes, name, "queue_limit must hold at least one packet");
    require(l.loss_rate >= 0 && l.loss_rate < 1, name, "loss_rate must be within [0, 1)");
  }
  require(network.mtu_bytes >= 64, "mtu", "must be >= 64");
  require(network.max_retransmits >= 0, "max_retransmits", "must be >= 0");
  require(finite_positive(network.retransmit_timeout_s), "retransmit_timeout", "must be > 0");
  require(network[LinkClass::UavGcs].range_m > 0, "uav_gcs", "range must be > 0");
  require(network[LinkClass::UavUav].range_m > 0, "uav_uav", "range must be > 0");

  require(energy.initial_j > 0, "energy_initial", "must be > 0");
  require(energy.e_tx_uj_per_byte >= 0 && energy.e_rx_uj_per_byte >= 0 && energy.p_flight_w >= 0, "energy",
          "coefficients must be >= 0");

  require(finite_positive(workload.t1_interval_s), "t1_interval", "must be > 0");
  require(finite_positive(workload.t2_interval_s), "t2_interval", "must be > 0");
  require(finite_positive(workload.t3_interval_s), "t3_interval", "must be > 0");
  require(finite_positive(workload.t5_interval_s), "t5_interval", "must be > 0");
  require(workload.t2_group_min >= 2 && workload.t2_group_max >= workload.t2_group_min, "t2_group",
          "bounds must satisfy 2 <= min <= max");
  require(workload.control_size >= 1, "control_size", "must be >= 1");

  require(finite_positive(consensus.t_bis_s), "t_bis", "must be > 0");
  require(consensus.t_bis_s < consensus.t_blk_s, "t_blk", "must exceed t_bis");
  require(finite_positive(consensus.t_bo_s), "t_bo", "must be > 0");
  require(finite_positive(consensus.assemble_interval_s), "assemble_interval", "must be > 0");
  require(consensus.max_block_txs >= 1, "max_block_txs", "must be >= 1");
  require(consensus.verify_s_per_tx >= 0, "verify_per_tx", "must be >= 0");
  require(consensus.miner_stall_prob >= 0 && consensus.miner_stall_prob < 1, "miner_stall_prob",
          "must be within [0, 1)");
  try {
    consensus.trust.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("trust", e.what());
  }

  require(finite_positive(topology.gcs_spacing_m), "gcs_spacing", "must be > 0");
  require(topology.gcs_jitter_m >= 0, "gcs_jitter", "must be >= 0");
  require(finite_positive(topology.uavn_disc_radius_m), "uavn_disc_radius", "must be > 0");
  require(topology.uavn_offset_m >= 0, "uavn_offset", "must be >= 0");
  require(topology.speed_min_mps > 0 && topology.speed_max_mps >= topology.speed_min_mps, "speed",
          "bounds must satisfy 0 < min <= max");
  require(topology.sites_per_gcs >= 0, "sites_per_gcs", "must be >= 0");

  require(finite_positive(detection.r_detect_m), "r_detect", "must be > 0");
  require(finite_positive(detection.w_detect_s), "w_detect", "must be > 0");
}

}  // namespace proact::sim

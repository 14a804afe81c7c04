#include "proact/cli/ini_config.hpp"

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>

namespace proact::cli {

using sim::ConfigError;
using sim::LinkClass;
using sim::ScenarioConfig;

namespace {

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

double to_double(const std::string& field, const std::string& v) {
  double out = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc{} || r.ptr != end) throw ConfigError(field, "expected a number, got '" + v + "'");
  return out;
}

long long to_int(const std::string& field, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc{} || r.ptr != end) throw ConfigError(field, "expected an integer, got '" + v + "'");
  return out;
}

std::size_t to_size(const std::string& field, const std::string& v) {
  const long long n = to_int(field, v);
  if (n < 0) throw ConfigError(field, "must be >= 0");
  return static_cast<std::size_t>(n);
}

bool to_bool(const std::string& field, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError(field, "expected true or false, got '" + v + "'");
}

template <class T>
Setter real(T ScenarioConfig::*group, double T::*member) {
  return [=](ScenarioConfig& c, const std::string& f, const std::string& v) { (c.*group).*member = to_double(f, v); };
}

Setter real(double ScenarioConfig::*member) {
  return [=](ScenarioConfig& c, const std::string& f, const std::string& v) { c.*member = to_double(f, v); };
}

Setter integer(int ScenarioConfig::*member) {
  return [=](ScenarioConfig& c, const std::string& f, const std::string& v) {
    c.*member = static_cast<int>(to_int(f, v));
  };
}

template <class T>
Setter integer(T ScenarioConfig::*group, int T::*member) {
  return [=](ScenarioConfig& c, const std::string& f, const std::string& v) {
    (c.*group).*member = static_cast<int>(to_int(f, v));
  };
}

Setter link_key(LinkClass cls, const std::string& key) {
  return [cls, key](ScenarioConfig& c, const std::string& f, const std::string& v) {
    auto& l = c.network[cls];
    if (key == "latency") l.latency_s = to_double(f, v);
    else if (key == "bandwidth") l.bandwidth_Bps = to_double(f, v);
    else if (key == "queue_limit") l.queue_limit_bytes = to_size(f, v);
    else if (key == "loss_rate") l.loss_rate = to_double(f, v);
    else if (key == "range") l.range_m = to_double(f, v);
    else if (key == "reliable") l.reliable = to_bool(f, v);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    using S = ScenarioConfig;
    t["scenario.n_ca"] = integer(&S::n_ca);
    t["scenario.gcs_per_ca"] = integer(&S::gcs_per_ca);
    t["scenario.tgcs_per_ca"] = integer(&S::tgcs_per_ca);
    t["scenario.uavn_per_gcs"] = integer(&S::uavn_per_gcs);
    t["scenario.uav_per_uavn"] = integer(&S::uav_per_uavn);
    t["scenario.malicious_fraction"] = real(&S::malicious_fraction);
    t["scenario.data_tx_size"] = [](S& c, const std::string& f, const std::string& v) { c.data_tx_size = to_size(f, v); };
    t["scenario.attack_interval"] = real(&S::attack_interval_s);
    t["scenario.mission_min"] = real(&S::mission_min_s);
    t["scenario.mission_max"] = real(&S::mission_max_s);
    t["scenario.sim_duration"] = real(&S::sim_duration_s);
    t["scenario.drain"] = real(&S::drain_s);
    t["scenario.mode"] = [](S& c, const std::string&, const std::string& v) { c.mode = sim::parse_mode(v); };
    t["scenario.seed"] = [](S& c, const std::string& f, const std::string& v) {
      c.seed = static_cast<std::uint64_t>(to_size(f, v));
    };
    t["scenario.tiering"] = [](S& c, const std::string& f, const std::string& v) { c.tiering = to_bool(f, v); };
    t["scenario.drone_capacity"] = [](S& c, const std::string& f, const std::string& v) {
      c.drone_capacity_bytes = to_size(f, v);
    };
    t["scenario.bra_policy"] = [](S& c, const std::string& f, const std::string& v) {
      if (v == "oldest_first") c.bra = ledger::BraPolicy::OldestFirst;
      else if (v == "outdated_first") c.bra = ledger::BraPolicy::OutdatedFirst;
      else throw ConfigError(f, "expected oldest_first or outdated_first, got '" + v + "'");
    };
    t["scenario.event_log"] = [](S& c, const std::string&, const std::string& v) { c.event_log_path = v; };
    t["scenario.ground_truth"] = [](S& c, const std::string&, const std::string& v) { c.ground_truth_path = v; };

    t["network.mtu"] = [](S& c, const std::string& f, const std::string& v) { c.network.mtu_bytes = to_size(f, v); };
    t["network.max_retransmits"] = integer(&S::network, &sim::NetworkParams::max_retransmits);
    t["network.retransmit_timeout"] = real(&S::network, &sim::NetworkParams::retransmit_timeout_s);
    t["network.loss_free"] = [](S& c, const std::string& f, const std::string& v) {
      if (to_bool(f, v)) c.network.make_loss_free();
    };
    for (auto cls : {LinkClass::UavUav, LinkClass::UavGcs, LinkClass::GcsCa, LinkClass::CaCa})
      for (const char* k : {"latency", "bandwidth", "queue_limit", "loss_rate", "range", "reliable"})
        t[std::string("network.") + sim::to_string(cls) + "." + k] = link_key(cls, k);

    t["energy.initial"] = real(&S::energy, &sim::EnergyParams::initial_j);
    t["energy.e_tx"] = real(&S::energy, &sim::EnergyParams::e_tx_uj_per_byte);
    t["energy.e_rx"] = real(&S::energy, &sim::EnergyParams::e_rx_uj_per_byte);
    t["energy.p_flight"] = real(&S::energy, &sim::EnergyParams::p_flight_w);

    t["workload.t1_interval"] = real(&S::workload, &sim::WorkloadParams::t1_interval_s);
    t["workload.t2_interval"] = real(&S::workload, &sim::WorkloadParams::t2_interval_s);
    t["workload.t2_group_min"] = integer(&S::workload, &sim::WorkloadParams::t2_group_min);
    t["workload.t2_group_max"] = integer(&S::workload, &sim::WorkloadParams::t2_group_max);
    t["workload.t3_interval"] = real(&S::workload, &sim::WorkloadParams::t3_interval_s);
    t["workload.t5_interval"] = real(&S::workload, &sim::WorkloadParams::t5_interval_s);
    t["workload.control_size"] = [](S& c, const std::string& f, const std::string& v) {
      c.workload.control_size = to_size(f, v);
    };

    t["consensus.t_bis"] = real(&S::consensus, &sim::ConsensusParams::t_bis_s);
    t["consensus.t_blk"] = real(&S::consensus, &sim::ConsensusParams::t_blk_s);
    t["consensus.t_bo"] = real(&S::consensus, &sim::ConsensusParams::t_bo_s);
    t["consensus.assemble_interval"] = real(&S::consensus, &sim::ConsensusParams::assemble_interval_s);
    t["consensus.max_block_txs"] = [](S& c, const std::string& f, const std::string& v) {
      c.consensus.max_block_txs = to_size(f, v);
    };
    t["consensus.verify_per_tx"] = real(&S::consensus, &sim::ConsensusParams::verify_s_per_tx);
    t["consensus.miner_stall_prob"] = real(&S::consensus, &sim::ConsensusParams::miner_stall_prob);
    t["consensus.t_tn"] = [](S& c, const std::string& f, const std::string& v) {
      c.consensus.trust.t_tn_s = to_double(f, v);
    };
    t["consensus.m_sub"] = [](S& c, const std::string& f, const std::string& v) {
      c.consensus.trust.m_sub_s = to_double(f, v);
    };
    t["consensus.th_tn"] = [](S& c, const std::string& f, const std::string& v) {
      c.consensus.trust.th_tn = to_double(f, v);
    };
    t["consensus.th_m"] = [](S& c, const std::string& f, const std::string& v) {
      c.consensus.trust.th_m = to_double(f, v);
    };

    t["topology.gcs_spacing"] = real(&S::topology, &sim::TopologyParams::gcs_spacing_m);
    t["topology.gcs_jitter"] = real(&S::topology, &sim::TopologyParams::gcs_jitter_m);
    t["topology.uavn_disc_radius"] = real(&S::topology, &sim::TopologyParams::uavn_disc_radius_m);
    t["topology.uavn_offset"] = real(&S::topology, &sim::TopologyParams::uavn_offset_m);
    t["topology.speed_min"] = real(&S::topology, &sim::TopologyParams::speed_min_mps);
    t["topology.speed_max"] = real(&S::topology, &sim::TopologyParams::speed_max_mps);
    t["topology.sites_per_gcs"] = integer(&S::topology, &sim::TopologyParams::sites_per_gcs);

    t["detection.r_detect"] = real(&S::detection, &sim::DetectionParams::r_detect_m);
    t["detection.w_detect"] = real(&S::detection, &sim::DetectionParams::w_detect_s);
    return t;
  }();
  return table;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = v.find(',', start);
    out.push_back(boost::algorithm::trim_copy(v.substr(start, comma == std::string::npos ? comma : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Entry {
  std::string field;
  std::vector<std::string> values;
};

}  // namespace

void apply_key(ScenarioConfig& cfg, const std::string& section, const std::string& key, const std::string& value) {
  const std::string field = section + "." + key;
  const auto it = setters().find(field);
  if (it == setters().end()) throw ConfigError(field, "unknown key");
  it->second(cfg, field, value);
}

std::vector<std::string> known_keys() {
  std::vector<std::string> out;
  for (const auto& [k, s] : setters()) out.push_back(k);
  return out;
}

std::vector<SweepPoint> parse_plan(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config", "line " + std::to_string(e.line()) + ": " + e.message());
  }

  std::vector<Entry> entries;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError(section, "key outside any section");
    for (const auto& [key, node] : body) {
      const std::string field = section + "." + key;
      if (!setters().count(field)) throw ConfigError(field, "unknown key");
      auto values = split_list(node.data());
      for (const auto& v : values)
        if (v.empty()) throw ConfigError(field, "empty value");
      entries.push_back({field, std::move(values)});
    }
  }

  // Odometer over the swept entries; the last swept key turns fastest.
  std::vector<std::size_t> swept;
  std::size_t total = 1;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].values.size() < 2) continue;
    swept.push_back(i);
    total *= entries[i].values.size();
  }

  std::vector<SweepPoint> plan;
  std::vector<std::size_t> pick(entries.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    SweepPoint p;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      const auto& v = e.values[pick[i]];
      setters().at(e.field)(p.cfg, e.field, v);
      if (e.values.size() > 1) p.label += (p.label.empty() ? "" : " ") + e.field + "=" + v;
    }
    p.cfg.validate();
    plan.push_back(std::move(p));
    for (auto it = swept.rbegin(); it != swept.rend(); ++it) {
      if (++pick[*it] < entries[*it].values.size()) break;
      pick[*it] = 0;
    }
  }
  return plan;
}

std::vector<SweepPoint> load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path);
  return parse_plan(in);
}

}  // namespace proact::cli

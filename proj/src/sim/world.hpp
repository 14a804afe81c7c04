#pragma once

// Internal state of one scenario run. Agents are plain structs owned by the
// World; they only interact through messages carried by the Network.

#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "proact/consensus/miner.hpp"
#include "proact/consensus/orderer.hpp"
#include "proact/consensus/quorum.hpp"
#include "proact/consensus/trust.hpp"
#include "proact/crypto/keys.hpp"
#include "proact/crypto/spongent.hpp"
#include "proact/ledger/access.hpp"
#include "proact/ledger/drone_ledger.hpp"
#include "proact/ledger/full_ledger.hpp"
#include "proact/sim/detection.hpp"
#include "proact/sim/energy.hpp"
#include "proact/sim/engine.hpp"
#include "proact/sim/metrics.hpp"
#include "proact/sim/network.hpp"
#include "proact/sim/scenario.hpp"
#include "proact/sim/topology.hpp"
#include "proact/sim/workload.hpp"
#include "proact/wire/messages.hpp"

namespace proact::sim::detail {

using ledger::BlockPtr;
using wire::Message;
using wire::NodeId;

inline constexpr std::uint32_t kCaIdBase = 1;
inline constexpr std::uint32_t kGcsIdBase = 1000;
inline constexpr std::uint32_t kDroneIdBase = 100000;

/// Purposes for per-agent random streams.
enum class Stream : std::uint64_t { Topology = 1, Malicious, Roles, Agent, Mobility, Phase };

struct Uavn {
  int gcs = 0;
  std::vector<int> drones;
  std::unique_ptr<Channel> up;
  std::unique_ptr<Channel> down;
  std::unique_ptr<Channel> mesh;
};

struct Drone {
  Drone(NodeId id_, const EnergyParams& ep, WaypointMobility mob, ledger::DroneLedger led)
      : id(id_), energy(ep), mobility(std::move(mob)), ledger(std::move(led)) {}

  NodeId id;
  int uavn = 0;
  int gcs = 0;
  bool malicious = false;
  double mission_s = 0;
  crypto::KeyPair keys;
  EnergyState energy;
  WaypointMobility mobility;
  ledger::DroneLedger ledger;
  std::mt19937_64 rng;
  std::uint64_t next_seq = 1;
  double flown_until_s = 0;
};

struct Gcs {
  NodeId id;
  int ca = 0;
  crypto::KeyPair keys;
  std::mt19937_64 rng;
  std::uint64_t next_seq = 1;
  std::vector<int> uavns;
  std::unique_ptr<Channel> up;
  std::unique_ptr<Channel> down;
  ledger::FullLedger ledger;
  /// Committed blocks that arrived ahead of their predecessor.
  std::map<std::uint64_t, BlockPtr> inbound;
  std::unique_ptr<FalseDataDetector> detector;
  consensus::TrustRecord trust;
  /// Index of the TGCS this station hands its transactions to.
  int miner_gcs = -1;

  bool tgcs = false;
  std::unique_ptr<consensus::Miner> miner;
  std::vector<wire::Transaction> pool;
  std::map<std::uint64_t, BlockPtr> received;
  std::map<std::uint64_t, consensus::VoteTally> tallies;
  std::map<std::uint64_t, wire::Bytes> error_bitmaps;
  std::set<std::uint64_t> voted;
  std::vector<int> gccs;
  double cpu_free_s = 0;
};

struct Ca {
  NodeId id;
  crypto::KeyPair keys;
  std::mt19937_64 rng;
  std::uint64_t next_seq = 1;
  std::vector<int> gcs;
  std::unique_ptr<Channel> trunk;

  std::optional<consensus::BlockOrderer> orderer;
  bool awaiting_handoff = false;
  std::vector<Message> deferred;
  std::map<std::uint64_t, consensus::VoteTally> tallies;
  std::uint64_t timer_at_us = 0;
};

struct FabricatedClaim {
  SiteClaim claim;
  std::uint64_t at_us = 0;
};

using Tallies = std::map<std::uint64_t, consensus::VoteTally>;

class World {
 public:
  explicit World(const ScenarioConfig& cfg);
  RunResult run();

 private:
  // scenario.cpp
  void build();
  void bootstrap_trust_and_roles();
  void make_genesis_block();
  void schedule_generators();
  RunResult finish();
  void write_ground_truth();
  std::mt19937_64 stream(std::uint32_t agent, Stream purpose) const;
  void periodic(NodeId target, double interval_s, double phase_s, bool until_end, std::function<void()> fn);
  void log(NodeId agent, const char* kind, const std::string& detail);
  const crypto::CryptoSuite& suite(TxKind kind, double mission_s) const;
  /// Network size of a block: its encoding plus the T3 attachments it carries.
  std::size_t block_bytes(const wire::Block& b) const;
  std::uint64_t now() const { return queue_.now_us(); }
  double now_s() const { return queue_.now_s(); }
  bool generating() const { return now() < gen_end_us_; }
  std::size_t n_tgcs() const { return tgcs_.size(); }
  bool sequential() const { return cfg_.mode == Mode::Sequential; }
  /// Trust records run on a clock shifted by one window so that the
  /// bootstrap history precedes t = 0.
  double trust_time() const { return now_s() + cfg_.consensus.trust.t_tn_s; }
  consensus::OrdererConfig orderer_config() const;

  // ground.cpp: transport
  std::vector<Channel*> gcs_to_ca(int g, int c) const;
  std::vector<Channel*> ca_to_gcs(int c, int g) const;
  std::vector<Channel*> gcs_to_gcs(int a, int b) const;
  void send(std::vector<Channel*> path, std::size_t bytes, NodeId target, std::function<void()> delivered,
            std::function<void()> lost = {}, std::function<void(std::size_t, std::size_t)> transmitted = {});
  /// One copy up to the CA, fanned out there to the other TGCSs and the BO.
  void tgcs_multicast(int from, std::size_t bytes, const std::function<void(int)>& at_tgcs,
                      const std::function<void(int)>& at_bo);
  void tgcs_vote(int from, std::uint64_t id, bool ack, const wire::Bytes& bitmap, std::uint8_t code);
  void send_to_bo(int g, const Message& m);

  // ground.cpp: workloads
  void gcs_t1_tick(int g);
  void gcs_t2_tick(int g);
  void ca_t5_tick(int c);
  void gcs_submit(int g, std::vector<wire::Transaction> txs);
  void gcs_on_t3(int g, const wire::Transaction& tx);
  void gcs_on_t4(int g, const wire::Transaction& tx);
  void gcc_receive(int g, const BlockPtr& b);
  void distribute(int g, const BlockPtr& b);

  // ground.cpp: mining and validation
  void tgcs_assemble_tick(int t);
  void tgcs_on_bo_message(int t, const Message& m);
  void tgcs_on_block(int t, const BlockPtr& b);
  void tgcs_on_vote(int t, std::uint64_t id, NodeId voter, bool ack, const wire::Bytes& bitmap);
  void tgcs_on_void(int t, std::uint64_t id);
  void tgcs_progress(int t);
  void tgcs_validate(int t, std::uint64_t id, const BlockPtr& b);
  void tgcs_commit(int t, std::uint64_t id);
  void tgcs_finalize_own(int t);
  void tgcs_broadcast_own(int t, const BlockPtr& b);

  // ground.cpp: block orderer
  void bo_receive(int c, const Message& m);
  void bo_handle(int c, const Message& m);
  void bo_vote(int c, std::uint64_t id, NodeId voter, bool ack);
  void bo_schedule_close(int c);
  void bo_close_window(int c);
  void bo_assign(int c, const std::vector<wire::Assignment>& a);
  void bo_broadcast(int c, const Message& m);
  void bo_arm_timer(int c);
  void bo_timer(int c);
  void bo_void(int c, std::uint64_t id);
  void bo_rotate();
  void bo_on_handoff(int c, const wire::BoHandoffMsg& h, Tallies tallies);

  // drones.cpp
  void drone_fly(Drone& d);
  bool drone_active(Drone& d);
  void drone_t3_tick(int d);
  void drone_attack_tick(int d);
  void drone_attack_access(int d);
  void drone_attack_false_data(int d);
  void drone_send_report(int d, DataReport report, bool attack);
  void drone_on_access_request(int target, const ledger::AccessRequest& req);
  void drone_on_command(int d, const wire::Transaction& tx, std::size_t bytes);
  void drone_on_block(int d, const BlockPtr& b, std::size_t bytes);
  void drone_to_gcs(int d, std::size_t bytes, std::function<void()> delivered, std::function<void()> lost);
  void drone_to_drone(int from, int to, std::size_t bytes, std::function<void()> delivered);
  std::vector<SiteClaim> observe(Vec2 pos) const;

  const ScenarioConfig cfg_;
  EventQueue queue_;
  std::unique_ptr<std::ofstream> log_file_;
  EventLog log_;
  crypto::DigestMemo memo_;
  Network net_;
  Topology topo_;

  crypto::KeyRegistry keys_;
  ledger::NodeRegistry registry_;
  std::vector<Ca> cas_;
  std::vector<Gcs> gcs_;
  std::vector<Uavn> uavns_;
  std::vector<Drone> drones_;
  std::vector<int> tgcs_;
  int acting_bo_ = 0;

  std::vector<FabricatedClaim> fabricated_;
  std::uint32_t next_fabricated_ = kFabricatedSiteBase;
  /// Access attacks by (attacker, request time).
  std::map<std::pair<std::uint32_t, std::uint64_t>, std::size_t> access_attacks_;
  std::map<wire::TxKey, std::size_t> data_attacks_;

  TxBook book_;
  std::vector<AttackRecord> attacks_;
  SafetyCounters safety_;
  std::set<std::uint64_t> committed_ids_;
  std::uint64_t blocks_voided_ = 0;
  std::uint64_t gen_end_us_ = 0;
  std::uint64_t end_us_ = 0;
};

}  // namespace proact::sim::detail

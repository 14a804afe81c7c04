#include "proact/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "proact/consensus/assignment.hpp"
#include "proact/ledger/genesis.hpp"
#include "proact/wire/codec.hpp"
#include "world.hpp"

namespace proact::sim {

namespace detail {

namespace {

double quantize(double m) { return static_cast<double>(std::lround(m * 10)) / 10.0; }

}  // namespace

World::World(const ScenarioConfig& cfg) : cfg_(cfg), net_(queue_, cfg.network, cfg.seed) {
  cfg_.validate();
  if (!cfg_.event_log_path.empty()) {
    log_file_ = std::make_unique<std::ofstream>(cfg_.event_log_path);
    if (!*log_file_) throw ConfigError("event_log_path", "cannot open " + cfg_.event_log_path);
    log_ = EventLog(log_file_.get());
  }
  gen_end_us_ = to_us(cfg_.sim_duration_s);
  end_us_ = gen_end_us_ + to_us(cfg_.drain_s);
}

std::mt19937_64 World::stream(std::uint32_t agent, Stream purpose) const {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed), static_cast<std::uint32_t>(cfg_.seed >> 32), agent,
                    static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

void World::log(NodeId agent, const char* kind, const std::string& detail) {
  if (log_.enabled()) log_.write(now(), agent, kind, detail);
}

const crypto::CryptoSuite& World::suite(TxKind kind, double mission_s) const {
  return suite_for_kind(kind, mission_s, cfg_.tiering);
}

std::size_t World::block_bytes(const wire::Block& b) const {
  std::size_t n = wire::encoded_size(b);
  // Drone-created BlockT2 transactions are T3 reports with an attachment.
  if (b.header.block_type == wire::BlockType::BlockT2)
    for (const auto& tx : b.transactions)
      if (tx.creator.value >= kDroneIdBase) n += cfg_.data_tx_size;
  return n;
}

consensus::OrdererConfig World::orderer_config() const {
  return {to_us(cfg_.consensus.t_bis_s), to_us(cfg_.consensus.t_blk_s), cfg_.mode == Mode::Sequential};
}

void World::periodic(NodeId target, double interval_s, double phase_s, bool until_end, std::function<void()> fn) {
  const std::uint64_t at = now() + to_us(phase_s);
  if (at >= (until_end ? end_us_ : gen_end_us_)) return;
  queue_.schedule(at, target, [this, target, interval_s, until_end, fn = std::move(fn)]() mutable {
    fn();
    periodic(target, interval_s, interval_s, until_end, std::move(fn));
  });
}

void World::build() {
  auto topo_rng = stream(0, Stream::Topology);
  topo_ = place_topology(cfg_, topo_rng);
  for (auto& s : topo_.sites) s.pos = {quantize(s.pos.x), quantize(s.pos.y)};

  const auto& links = cfg_.network;
  for (int c = 0; c < cfg_.n_ca; ++c) {
    Ca ca;
    ca.id = NodeId{kCaIdBase + static_cast<std::uint32_t>(c)};
    ca.keys = crypto::KeyPair::derive(cfg_.seed, crypto::Holder::node(ca.id));
    ca.rng = stream(ca.id.value, Stream::Agent);
    ca.trunk = std::make_unique<Channel>(LinkClass::CaCa, links[LinkClass::CaCa], "ca" + std::to_string(c) + ".trunk");
    cas_.push_back(std::move(ca));
  }
  for (int g = 0; g < cfg_.n_gcs(); ++g) {
    Gcs s;
    s.id = NodeId{kGcsIdBase + static_cast<std::uint32_t>(g)};
    s.ca = topo_.gcs_ca[static_cast<std::size_t>(g)];
    s.keys = crypto::KeyPair::derive(cfg_.seed, crypto::Holder::node(s.id));
    s.rng = stream(s.id.value, Stream::Agent);
    const std::string name = "gcs" + std::to_string(g);
    s.up = std::make_unique<Channel>(LinkClass::GcsCa, links[LinkClass::GcsCa], name + ".up");
    s.down = std::make_unique<Channel>(LinkClass::GcsCa, links[LinkClass::GcsCa], name + ".down");
    s.detector = std::make_unique<FalseDataDetector>(cfg_.detection);
    cas_[static_cast<std::size_t>(s.ca)].gcs.push_back(g);
    gcs_.push_back(std::move(s));
  }
  for (std::size_t u = 0; u < topo_.uavn.size(); ++u) {
    Uavn n;
    n.gcs = topo_.uavn[u].gcs;
    const std::string name = "uavn" + std::to_string(u);
    n.up = std::make_unique<Channel>(LinkClass::UavGcs, links[LinkClass::UavGcs], name + ".up");
    n.down = std::make_unique<Channel>(LinkClass::UavGcs, links[LinkClass::UavGcs], name + ".down");
    n.mesh = std::make_unique<Channel>(LinkClass::UavUav, links[LinkClass::UavUav], name + ".mesh");
    gcs_[static_cast<std::size_t>(n.gcs)].uavns.push_back(static_cast<int>(u));
    uavns_.push_back(std::move(n));
  }

  const auto& tp = cfg_.topology;
  drones_.reserve(topo_.drone_start.size());
  for (std::size_t d = 0; d < topo_.drone_start.size(); ++d) {
    const NodeId id{kDroneIdBase + static_cast<std::uint32_t>(d)};
    const int u = topo_.drone_uavn[d];
    const auto& disc = topo_.uavn[static_cast<std::size_t>(u)];
    auto mob_rng = stream(id.value, Stream::Mobility);
    Drone drone(id, cfg_.energy,
                WaypointMobility(topo_.drone_start[d], disc.center, disc.radius, tp.speed_min_mps, tp.speed_max_mps,
                                 mob_rng()),
                ledger::DroneLedger(id, cfg_.drone_capacity_bytes, cfg_.bra));
    drone.uavn = u;
    drone.gcs = disc.gcs;
    drone.keys = crypto::KeyPair::derive(cfg_.seed, crypto::Holder::node(id));
    drone.rng = stream(id.value, Stream::Agent);
    drone.mission_s = std::uniform_real_distribution<double>(cfg_.mission_min_s, cfg_.mission_max_s)(drone.rng);
    uavns_[static_cast<std::size_t>(u)].drones.push_back(static_cast<int>(d));
    drones_.push_back(std::move(drone));
  }

  std::vector<int> order(drones_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  auto mal_rng = stream(0, Stream::Malicious);
  std::shuffle(order.begin(), order.end(), mal_rng);
  const auto n_mal = static_cast<std::size_t>(std::lround(cfg_.malicious_fraction * static_cast<double>(drones_.size())));
  for (std::size_t i = 0; i < n_mal; ++i) drones_[static_cast<std::size_t>(order[i])].malicious = true;

  for (const auto& ca : cas_) {
    keys_.add_ca(ca.id);
    keys_.register_node(ca.id, ca.keys);
  }
  for (const auto& s : gcs_) keys_.register_node(s.id, s.keys);
  for (const auto& d : drones_) keys_.register_node(d.id, d.keys);

  bootstrap_trust_and_roles();
  make_genesis_block();

  acting_bo_ = static_cast<int>(consensus::bo_index(cas_.size(), 0, cfg_.consensus.t_bo_s));
  cas_[static_cast<std::size_t>(acting_bo_)].orderer.emplace(orderer_config(), 0, 0);
}

void World::bootstrap_trust_and_roles() {
  const auto& tp = cfg_.consensus.trust;
  const int n_sub = tp.subperiods_per_window();
  const double lo = tp.th_m + 1;
  const double hi = lo + 2 * tp.th_tn / n_sub;
  std::vector<double> window(gcs_.size(), 0);
  std::vector<bool> eligible(gcs_.size(), false);
  for (std::size_t g = 0; g < gcs_.size(); ++g) {
    auto rng = stream(gcs_[g].id.value, Stream::Roles);
    std::uniform_real_distribution<double> pts(lo, hi);
    std::vector<double> totals(static_cast<std::size_t>(n_sub));
    for (auto& t : totals) {
      t = pts(rng);
      window[g] += t;
    }
    gcs_[g].trust = consensus::TrustRecord::from_totals(totals, tp.m_sub_s);
    eligible[g] = consensus::poat_eligible(gcs_[g].trust, tp, tp.t_tn_s);
  }

  for (const auto& ca : cas_) {
    std::vector<int> cand;
    for (int g : ca.gcs)
      if (eligible[static_cast<std::size_t>(g)]) cand.push_back(g);
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) {
      return window[static_cast<std::size_t>(a)] > window[static_cast<std::size_t>(b)];
    });
    if (cand.size() > static_cast<std::size_t>(cfg_.tgcs_per_ca)) cand.resize(static_cast<std::size_t>(cfg_.tgcs_per_ca));
    for (int g : cand) gcs_[static_cast<std::size_t>(g)].tgcs = true;
  }
  std::vector<NodeId> tgcs_ids, gcc_ids;
  for (std::size_t g = 0; g < gcs_.size(); ++g) {
    if (gcs_[g].tgcs) {
      tgcs_.push_back(static_cast<int>(g));
      tgcs_ids.push_back(gcs_[g].id);
      gcs_[g].miner_gcs = static_cast<int>(g);
      gcs_[g].miner = std::make_unique<consensus::Miner>(gcs_[g].id, cfg_.consensus.max_block_txs);
    } else {
      gcc_ids.push_back(gcs_[g].id);
    }
  }
  if (tgcs_.empty()) throw ConfigError("trust", "no GCS meets the mining trust conditions");
  if (!gcc_ids.empty()) {
    auto rng = stream(0, Stream::Roles);
    for (const auto& [tgcs, gccs] : consensus::assign_gcs_to_tgcs(gcc_ids, tgcs_ids, rng)) {
      const int t = static_cast<int>(tgcs.value - kGcsIdBase);
      for (const auto& gcc : gccs) {
        const int g = static_cast<int>(gcc.value - kGcsIdBase);
        gcs_[static_cast<std::size_t>(g)].miner_gcs = t;
        gcs_[static_cast<std::size_t>(t)].gccs.push_back(g);
      }
    }
  }
}

void World::make_genesis_block() {
  std::vector<ledger::Registration> regs;
  for (const auto& ca : cas_) regs.push_back({{ca.id, wire::Role::CA, "ca-" + std::to_string(ca.id.value)}, ca.keys.public_key, false});
  for (const auto& s : gcs_)
    regs.push_back({{s.id, s.tgcs ? wire::Role::TGCS : wire::Role::GCS, "gcs-" + std::to_string(s.id.value)},
                    s.keys.public_key, s.tgcs});
  for (const auto& d : drones_)
    regs.push_back({{d.id, wire::Role::UAV, "owner-" + std::to_string(d.id.value - kDroneIdBase)}, d.keys.public_key, false});
  auto& ca0 = cas_.front();
  auto genesis = std::make_shared<const wire::Block>(ledger::make_genesis(regs, ca0.keys, ca0.id, 0));
  // Registrations use sequence numbers 0..n-1 of the issuing CA.
  ca0.next_seq = genesis->transactions.size();
  ledger::import_registrations(*genesis, registry_, true);
  for (auto& s : gcs_) s.ledger.append(genesis);
  committed_ids_.insert(0);
}

void World::schedule_generators() {
  const auto& w = cfg_.workload;
  const auto phase = [&](std::mt19937_64& rng, double interval) {
    return std::uniform_real_distribution<double>(0, interval)(rng);
  };
  for (std::size_t g = 0; g < gcs_.size(); ++g) {
    auto rng = stream(gcs_[g].id.value, Stream::Phase);
    const int gi = static_cast<int>(g);
    periodic(gcs_[g].id, w.t1_interval_s, phase(rng, w.t1_interval_s), false, [this, gi] { gcs_t1_tick(gi); });
    periodic(gcs_[g].id, w.t2_interval_s, phase(rng, w.t2_interval_s), false, [this, gi] { gcs_t2_tick(gi); });
    if (gcs_[g].tgcs)
      periodic(gcs_[g].id, cfg_.consensus.assemble_interval_s, phase(rng, cfg_.consensus.assemble_interval_s), true,
               [this, gi] { tgcs_assemble_tick(gi); });
  }
  for (std::size_t c = 0; c < cas_.size(); ++c) {
    auto rng = stream(cas_[c].id.value, Stream::Phase);
    const int ci = static_cast<int>(c);
    periodic(cas_[c].id, w.t5_interval_s, phase(rng, w.t5_interval_s), false, [this, ci] { ca_t5_tick(ci); });
  }
  for (std::size_t d = 0; d < drones_.size(); ++d) {
    auto rng = stream(drones_[d].id.value, Stream::Phase);
    const int di = static_cast<int>(d);
    periodic(drones_[d].id, w.t3_interval_s, phase(rng, w.t3_interval_s), false, [this, di] { drone_t3_tick(di); });
    if (drones_[d].malicious)
      periodic(drones_[d].id, cfg_.attack_interval_s, phase(rng, cfg_.attack_interval_s), false,
               [this, di] { drone_attack_tick(di); });
  }
  if (cas_.size() > 1) {
    for (double t = cfg_.consensus.t_bo_s; to_us(t) < end_us_; t += cfg_.consensus.t_bo_s)
      queue_.schedule(to_us(t), cas_.front().id, [this] { bo_rotate(); });
  }
}

RunResult World::run() {
  crypto::ScopedDigestMemo memo(memo_);
  build();
  schedule_generators();
  queue_.run_until(end_us_);
  return finish();
}

RunResult World::finish() {
  RunResult r;
  for (auto& d : drones_) drone_fly(d);

  RunFacts facts;
  facts.txs = &book_;
  facts.attacks = &attacks_;
  for (const auto& d : drones_) facts.drone_consumed_j.push_back(d.energy.consumed_j());
  for (const auto& d : drones_) {
    if (d.ledger.current_bytes() > d.ledger.capacity_bytes()) ++safety_.capacity_violations;
    for (auto id : d.ledger.block_ids()) {
      const wire::Block* b = d.ledger.block(id);
      for (const auto& tx : b->transactions) {
        const TxRecord* rec = book_.find(wire::key_of(tx));
        if (!rec || rec->original_bytes == 0) continue;
        facts.bto_samples.push_back(byte_overhead(wire::encoded_size(tx), rec->original_bytes));
      }
    }
  }
  facts.blocks_committed = committed_ids_.size() - 1;  // Genesis is not mined
  facts.blocks_voided = blocks_voided_;
  facts.packets_dropped = net_.counters().packets_dropped();
  facts.messages_lost = net_.counters().messages_lost;

  // Every pair of stations must agree on every height both hold.
  std::size_t height = 0;
  for (const auto& s : gcs_) height = std::max(height, s.ledger.size());
  for (std::uint64_t h = 0; h < height; ++h) {
    const wire::Digest* ref = nullptr;
    for (const auto& s : gcs_) {
      if (h >= s.ledger.size()) continue;
      if (!ref)
        ref = &s.ledger.block_digest(h);
      else if (*ref != s.ledger.block_digest(h)) {
        ++safety_.ledger_divergences;
        break;
      }
    }
  }

  r.metrics = compute_metrics(cfg_, facts);
  r.safety = safety_;
  r.txs = book_;
  r.attacks = attacks_;
  for (const auto& [k, rec] : book_.all())
    if (rec.fate == TxFate::Committed) r.committed.push_back(k);
  r.chain_height = height == 0 ? 0 : height - 1;
  r.end_us = now();
  r.events_processed = queue_.processed();
  r.tgcs_count = static_cast<int>(tgcs_.size());
  for (int t : tgcs_)
    r.tgcs_eligible_at_end += consensus::poat_eligible(gcs_[static_cast<std::size_t>(t)].trust, cfg_.consensus.trust,
                                                      trust_time());
  if (!cfg_.ground_truth_path.empty()) write_ground_truth();
  return r;
}

void World::write_ground_truth() {
  std::ofstream out(cfg_.ground_truth_path);
  if (!out) throw ConfigError("ground_truth_path", "cannot open " + cfg_.ground_truth_path);
  out << "# site id x y\n";
  for (const auto& s : topo_.sites) out << "site " << s.id << ' ' << s.pos.x << ' ' << s.pos.y << '\n';
  out << "# drone id uavn malicious mission_s\n";
  for (const auto& d : drones_)
    out << "drone " << d.id.value << ' ' << d.uavn << ' ' << d.malicious << ' ' << d.mission_s << '\n';
  out << "# leg drone t0 t1 x0 y0 x1 y1\n";
  for (const auto& d : drones_)
    for (const auto& l : d.mobility.legs())
      out << "leg " << d.id.value << ' ' << l.t0 << ' ' << l.t1 << ' ' << l.from.x << ' ' << l.from.y << ' ' << l.to.x
          << ' ' << l.to.y << '\n';
  out << "# attack_false_data attacker at_us detected\n";
  for (const auto& a : attacks_) {
    if (a.kind != AttackKind::FalseData) continue;
    out << "attack_false_data " << a.attacker.value << ' ' << a.at_us << ' ' << a.detected << '\n';
  }
}

}  // namespace detail

RunResult run(const ScenarioConfig& cfg) {
  detail::World w(cfg);
  return w.run();
}

std::vector<wire::TxKey> uncommitted_before(const RunResult& r, double horizon_s) {
  std::vector<wire::TxKey> out;
  const std::uint64_t h = to_us(horizon_s);
  const std::uint64_t cutoff = r.end_us > h ? r.end_us - h : 0;
  for (const auto& [k, rec] : r.txs.all()) {
    if (rec.generated_us >= cutoff) continue;
    if (rec.fate == TxFate::Pending || rec.fate == TxFate::Dropped) out.push_back(k);
  }
  return out;
}

}  // namespace proact::sim

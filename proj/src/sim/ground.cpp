// Ground agents: GCS workloads and forwarding, the TGCS mining and
// validation pipeline, and the acting Block Orderer.

#include <algorithm>

#include "proact/consensus/assignment.hpp"
#include "proact/crypto/sealing.hpp"
#include "proact/ledger/validate.hpp"
#include "proact/wire/codec.hpp"
#include "world.hpp"

namespace proact::sim::detail {

using consensus::CommitStatus;

namespace {

std::string id_str(std::uint64_t id) { return std::to_string(id); }

template <typename Map>
void erase_from(Map& m, std::uint64_t id) {
  m.erase(m.lower_bound(id), m.end());
}

}  // namespace

// ---- transport ----

std::vector<Channel*> World::gcs_to_ca(int g, int c) const {
  const auto& s = gcs_[static_cast<std::size_t>(g)];
  std::vector<Channel*> p{s.up.get()};
  if (s.ca != c) p.push_back(cas_[static_cast<std::size_t>(s.ca)].trunk.get());
  return p;
}

std::vector<Channel*> World::ca_to_gcs(int c, int g) const {
  const auto& s = gcs_[static_cast<std::size_t>(g)];
  std::vector<Channel*> p;
  if (s.ca != c) p.push_back(cas_[static_cast<std::size_t>(c)].trunk.get());
  p.push_back(s.down.get());
  return p;
}

std::vector<Channel*> World::gcs_to_gcs(int a, int b) const {
  auto p = gcs_to_ca(a, gcs_[static_cast<std::size_t>(b)].ca);
  p.push_back(gcs_[static_cast<std::size_t>(b)].down.get());
  return p;
}

void World::send(std::vector<Channel*> path, std::size_t bytes, NodeId target, std::function<void()> delivered,
                 std::function<void()> lost, std::function<void(std::size_t, std::size_t)> transmitted) {
  if (path.empty()) {
    queue_.schedule(now(), target, std::move(delivered));
    return;
  }
  net_.send(std::move(path), bytes, target, {std::move(delivered), std::move(lost), std::move(transmitted)});
}

void World::tgcs_multicast(int from, std::size_t bytes, const std::function<void(int)>& at_tgcs,
                           const std::function<void(int)>& at_bo) {
  const auto& src = gcs_[static_cast<std::size_t>(from)];
  const int ca = src.ca;
  const int bo = acting_bo_;
  send({src.up.get()}, bytes, cas_[static_cast<std::size_t>(ca)].id, [this, from, ca, bo, bytes, at_tgcs, at_bo] {
    for (int t : tgcs_) {
      if (t == from) continue;
      auto rest = ca_to_gcs(ca, t);
      send(std::move(rest), bytes, gcs_[static_cast<std::size_t>(t)].id, [at_tgcs, t] { at_tgcs(t); });
    }
    if (!at_bo) return;
    std::vector<Channel*> rest;
    if (bo != ca) rest.push_back(cas_[static_cast<std::size_t>(ca)].trunk.get());
    send(std::move(rest), bytes, cas_[static_cast<std::size_t>(bo)].id, [at_bo, bo] { at_bo(bo); });
  });
}

void World::tgcs_vote(int from, std::uint64_t id, bool ack, const wire::Bytes& bitmap, std::uint8_t code) {
  const NodeId voter = gcs_[static_cast<std::size_t>(from)].id;
  Message m = ack ? Message(wire::BlockAckMsg{id, voter}) : Message(wire::BlockErrorMsg{id, voter, code, bitmap});
  tgcs_multicast(
      from, wire::encoded_size(m), [this, id, voter, ack, bitmap](int t) { tgcs_on_vote(t, id, voter, ack, bitmap); },
      [this, m](int c) { bo_receive(c, m); });
}

void World::send_to_bo(int g, const Message& m) {
  const int bo = acting_bo_;
  send(gcs_to_ca(g, bo), wire::encoded_size(m), cas_[static_cast<std::size_t>(bo)].id,
       [this, bo, m] { bo_receive(bo, m); });
}

// ---- workloads ----

void World::gcs_t1_tick(int g) {
  auto& s = gcs_[static_cast<std::size_t>(g)];
  std::vector<wire::Transaction> batch;
  for (int u : s.uavns) {
    for (int d : uavns_[static_cast<std::size_t>(u)].drones) {
      const Drone& drone = drones_[static_cast<std::size_t>(d)];
      TxSpec spec;
      spec.kind = TxKind::T1;
      spec.creator = s.id;
      spec.tx_seq = s.next_seq++;
      spec.at_us = now();
      spec.owners = {drone.id};
      spec.suite = &suite(TxKind::T1, drone.mission_s);
      spec.plaintext = command_payload(cfg_.workload.control_size, (std::uint64_t{s.id.value} << 32) ^ spec.tx_seq);
      auto tx = build_transaction(spec, s.keys, &drone.keys.public_key, s.rng);
      book_.generated(wire::key_of(tx), TxKind::T1, now(), cfg_.workload.control_size);
      const std::size_t bytes = wire::encoded_size(tx);
      send({uavns_[static_cast<std::size_t>(u)].down.get()}, bytes, drone.id,
           [this, d, tx, bytes] { drone_on_command(d, tx, bytes); });
      batch.push_back(std::move(tx));
    }
  }
  gcs_submit(g, std::move(batch));
}

void World::gcs_t2_tick(int g) {
  auto& s = gcs_[static_cast<std::size_t>(g)];
  if (s.uavns.empty()) return;
  const int u = s.uavns[std::uniform_int_distribution<std::size_t>(0, s.uavns.size() - 1)(s.rng)];
  std::vector<int> members = uavns_[static_cast<std::size_t>(u)].drones;
  if (members.size() < 2) return;
  const int lo = std::min<int>(cfg_.workload.t2_group_min, static_cast<int>(members.size()));
  const int hi = std::min<int>(cfg_.workload.t2_group_max, static_cast<int>(members.size()));
  const int k = std::max(2, std::uniform_int_distribution<int>(lo, hi)(s.rng));
  std::shuffle(members.begin(), members.end(), s.rng);
  members.resize(static_cast<std::size_t>(k));

  std::vector<NodeId> owners;
  double longest = 0;
  for (int d : members) {
    owners.push_back(drones_[static_cast<std::size_t>(d)].id);
    longest = std::max(longest, drones_[static_cast<std::size_t>(d)].mission_s);
  }
  std::sort(owners.begin(), owners.end());
  const auto& group = keys_.group_keygen(cas_[static_cast<std::size_t>(s.ca)].id, owners, cfg_.seed);

  TxSpec spec;
  spec.kind = TxKind::T2;
  spec.creator = s.id;
  spec.tx_seq = s.next_seq++;
  spec.at_us = now();
  spec.owners = owners;
  spec.suite = &suite(TxKind::T2, longest);
  spec.plaintext = command_payload(cfg_.workload.control_size, (std::uint64_t{s.id.value} << 32) ^ spec.tx_seq);
  auto tx = build_transaction(spec, s.keys, &group.public_key, s.rng);
  book_.generated(wire::key_of(tx), TxKind::T2, now(), cfg_.workload.control_size);
  const std::size_t bytes = wire::encoded_size(tx);
  send({uavns_[static_cast<std::size_t>(u)].down.get()}, bytes, s.id, [this, members, tx, bytes] {
    for (int d : members) drone_on_command(d, tx, bytes);
  });
  gcs_submit(g, {std::move(tx)});
}

void World::ca_t5_tick(int c) {
  auto& ca = cas_[static_cast<std::size_t>(c)];
  for (int g : ca.gcs) {
    const auto& s = gcs_[static_cast<std::size_t>(g)];
    TxSpec spec;
    spec.kind = TxKind::T5;
    spec.creator = ca.id;
    spec.tx_seq = ca.next_seq++;
    spec.at_us = now();
    spec.owners = {s.id};
    spec.suite = &suite(TxKind::T5, 0);
    spec.plaintext = command_payload(cfg_.workload.control_size, (std::uint64_t{ca.id.value} << 32) ^ spec.tx_seq);
    auto tx = build_transaction(spec, ca.keys, &s.keys.public_key, ca.rng);
    book_.generated(wire::key_of(tx), TxKind::T5, now(), cfg_.workload.control_size);
    send(ca_to_gcs(c, g), wire::encoded_size(tx), s.id, [this, g, tx] { gcs_submit(g, {tx}); });
  }
}

void World::gcs_submit(int g, std::vector<wire::Transaction> txs) {
  if (txs.empty()) return;
  auto& s = gcs_[static_cast<std::size_t>(g)];
  const int m = s.miner_gcs;
  auto& miner = gcs_[static_cast<std::size_t>(m)];
  if (m == g) {
    for (auto& tx : txs) miner.pool.push_back(std::move(tx));
    return;
  }
  std::size_t bytes = 0;
  for (const auto& tx : txs)
    bytes += carried_size(tx, tx.creator.value >= kDroneIdBase && tx.block_target == wire::BlockType::BlockT2
                                  ? cfg_.data_tx_size
                                  : 0);
  s.trust.add(consensus::TrustEvent::ValidForward, trust_time(), cfg_.consensus.weights);
  send(gcs_to_gcs(g, m), bytes, miner.id, [this, m, txs = std::move(txs)]() mutable {
    auto& pool = gcs_[static_cast<std::size_t>(m)].pool;
    for (auto& tx : txs) pool.push_back(std::move(tx));
  });
}

void World::gcs_on_t3(int g, const wire::Transaction& tx) {
  auto& s = gcs_[static_cast<std::size_t>(g)];
  auto report = decode_report(tx.payload);
  if (!report) {
    book_.rejected(wire::key_of(tx));
    return;
  }
  ReceivedReport rec{wire::key_of(tx), std::move(*report), now()};
  s.detector->prune(now());
  s.detector->record(rec);
  if (rec.report.observed.empty()) {
    gcs_submit(g, {tx});
    return;
  }
  // A report asserting a site waits for corroborating neighbours.
  queue_.schedule_in(cfg_.detection.w_detect_s, s.id, [this, g, tx, rec] {
    auto& st = gcs_[static_cast<std::size_t>(g)];
    if (!st.detector->refuted(rec)) {
      gcs_submit(g, {tx});
      return;
    }
    book_.rejected(rec.key);
    log(st.id, "reject", "false-data " + id_str(rec.key.creator.value) + ":" + id_str(rec.key.tx_seq));
    auto it = data_attacks_.find(rec.key);
    if (it == data_attacks_.end()) return;
    auto& a = attacks_[it->second];
    if (!a.detected) {
      a.detected = true;
      a.detected_us = now();
      log(st.id, "detect", "false-data attacker=" + id_str(a.attacker.value));
    }
  });
}

void World::gcs_on_t4(int g, const wire::Transaction& tx) {
  auto& s = gcs_[static_cast<std::size_t>(g)];
  try {
    const auto body = crypto::open_with_key(crypto::suite_of(tx), s.keys.public_key, tx.payload);
    wire::ByteReader rd(body);
    rd.u8();  // kind
    rd.u32();  // reporter
    const std::uint32_t offender = rd.u32();
    rd.u32();
    rd.u64();
    const std::uint64_t at_us = rd.u64();
    auto it = access_attacks_.find({offender, at_us});
    if (it != access_attacks_.end() && !attacks_[it->second].detected) {
      auto& a = attacks_[it->second];
      a.detected = true;
      a.detected_us = now();
      log(s.id, "detect", "access attacker=" + id_str(offender) + " target=" + id_str(a.target.value));
    }
  } catch (const crypto::CryptoError&) {
    book_.rejected(wire::key_of(tx));
    return;
  } catch (const wire::WireError&) {
    book_.rejected(wire::key_of(tx));
    return;
  }
  gcs_submit(g, {tx});
}

void World::gcc_receive(int g, const BlockPtr& b) {
  auto& s = gcs_[static_cast<std::size_t>(g)];
  if (b->header.block_id < s.ledger.next_id()) return;
  s.inbound[b->header.block_id] = b;
  for (auto it = s.inbound.find(s.ledger.next_id()); it != s.inbound.end(); it = s.inbound.find(s.ledger.next_id())) {
    BlockPtr next = it->second;
    s.inbound.erase(it);
    try {
      s.ledger.append(next);
    } catch (const ledger::LedgerError& e) {
      if (e.code() == ledger::LedgerErrc::ChainBreak) ++safety_.chain_breaks;
      return;
    }
    distribute(g, next);
  }
}

void World::distribute(int g, const BlockPtr& b) {
  if (b->header.block_type != wire::BlockType::BlockT1) return;
  std::set<NodeId> named;
  for (const auto& e : b->header.ta_list) named.insert(e.owners.begin(), e.owners.end());
  const std::size_t bytes = block_bytes(*b);
  for (int u : gcs_[static_cast<std::size_t>(g)].uavns) {
    std::vector<int> targets;
    for (int d : uavns_[static_cast<std::size_t>(u)].drones)
      if (named.count(drones_[static_cast<std::size_t>(d)].id)) targets.push_back(d);
    if (targets.empty()) continue;
    send({uavns_[static_cast<std::size_t>(u)].down.get()}, bytes, gcs_[static_cast<std::size_t>(g)].id,
         [this, targets, b, bytes] {
           for (int d : targets) drone_on_block(d, b, bytes);
         });
  }
}

// ---- mining and validation ----

void World::tgcs_assemble_tick(int t) {
  auto& s = gcs_[static_cast<std::size_t>(t)];
  if (s.pool.empty()) return;
  // One request in flight per miner: the pool keeps filling until the
  // previous blocks commit, which bounds the pipeline depth.
  for (const auto& p : s.miner->pending())
    if (p.state != consensus::PendingState::Committed && p.state != consensus::PendingState::Voided) return;
  const auto on_chain = [&s](const wire::TxKey& k) { return s.ledger.contains(k); };
  const std::size_t n = s.pool.size();
  auto res = s.miner->assemble(std::move(s.pool), registry_, on_chain, now());
  s.pool = std::move(res.deferred);
  for (const auto& r : res.rejected) book_.rejected(wire::key_of(r.tx));
  if (!res.nbr) return;
  // In parallel mode the body is generated while the request is out. A
  // sequential miner only starts once its turn comes (see finalize).
  const double gen = sequential() ? 0.0 : static_cast<double>(n) * cfg_.consensus.verify_s_per_tx;
  const double done = std::max(s.cpu_free_s, now_s()) + gen;
  s.cpu_free_s = done;
  const wire::NbrMsg nbr = *res.nbr;
  log(s.id, "nbr", "blocks=" + id_str(nbr.request_count) + " txs=" + id_str(n));
  queue_.schedule(std::max(now(), to_us(done)), s.id, [this, t, nbr] { send_to_bo(t, nbr); });
}

void World::tgcs_on_bo_message(int t, const Message& m) {
  auto& s = gcs_[static_cast<std::size_t>(t)];
  if (const auto* a = std::get_if<wire::AssignMsg>(&m)) {
    s.miner->on_assign(*a);
    tgcs_finalize_own(t);
    tgcs_progress(t);
  } else if (const auto* v = std::get_if<wire::VoidMsg>(&m)) {
    tgcs_on_void(t, v->block_id);
  }
}

void World::tgcs_finalize_own(int t) {
  auto& s = gcs_[static_cast<std::size_t>(t)];
  auto block = s.miner->try_finalize(s.ledger.tip_id(), s.ledger.tip_digest());
  if (!block) return;
  const std::uint64_t id = block->header.block_id;
  if (cfg_.consensus.miner_stall_prob > 0 &&
      std::uniform_real_distribution<double>(0, 1)(s.rng) < cfg_.consensus.miner_stall_prob) {
    log(s.id, "stall", "block=" + id_str(id));
    return;
  }
  auto b = std::make_shared<const wire::Block>(std::move(*block));
  if (sequential()) {
    // Single-miner discipline: the block is generated after the grant.
    const double done = std::max(s.cpu_free_s, now_s()) +
                        static_cast<double>(b->transactions.size()) * cfg_.consensus.verify_s_per_tx;
    s.cpu_free_s = done;
    queue_.schedule(std::max(now(), to_us(done)), s.id, [this, t, b] { tgcs_broadcast_own(t, b); });
    return;
  }
  tgcs_broadcast_own(t, b);
}

void World::tgcs_broadcast_own(int t, const BlockPtr& b) {
  auto& s = gcs_[static_cast<std::size_t>(t)];
  const std::uint64_t id = b->header.block_id;
  // A VOID during generation renumbers or reverts the block.
  const auto* p = s.miner->find(id);
  if (p == nullptr || p->state != consensus::PendingState::Broadcast || p->block.header != b->header) return;
  s.received[id] = b;
  s.voted.insert(id);
  s.tallies[id].add_ack(s.id);
  log(s.id, "block", "id=" + id_str(id) + " type=" + wire::to_string(b->header.block_type) +
                         " txs=" + id_str(b->transactions.size()));
  tgcs_multicast(t, block_bytes(*b) + 1, [this, b](int dst) { tgcs_on_block(dst, b); }, {});
  tgcs_vote(t, id, true, {}, 0);
  // With a single TGCS the miner's own ACK is already a quorum.
  tgcs_progress(t);
}

void World::tgcs_on_block(int t, const BlockPtr& b) {
  auto& s = gcs_[static_cast<std::size_t>(t)];
  const std::uint64_t id = b->header.block_id;
  if (id < s.ledger.next_id()) return;
  s.received[id] = b;
  tgcs_progress(t);
}

void World::tgcs_on_vote(int t, std::uint64_t id, NodeId voter, bool ack, const wire::Bytes& bitmap) {
  auto& s = gcs_[static_cast<std::size_t>(t)];
  if (id < s.ledger.next_id()) return;
  auto& tally = s.tallies[id];
  if (ack) {
    tally.add_ack(voter);
  } else if (tally.add_error(voter)) {
    auto& merged = s.error_bitmaps[id];
    if (merged.size() < bitmap.size()) merged.resize(bitmap.size(), 0);
    for (std::size_t i = 0; i < bitmap.size(); ++i) merged[i] |= bitmap[i];
  }
  if (tally.status(n_tgcs()) == CommitStatus::Rejected) {
    const auto* p = s.miner->find(id);
    if (p && p->state == consensus::PendingState::Broadcast) {
      const auto txs = p->block.transactions;
      auto keep = s.miner->on_rejected(id, s.error_bitmaps[id]);
      std::set<wire::TxKey> kept;
      for (const auto& tx : keep) kept.insert(wire::key_of(tx));
      for (const auto& tx : txs)
        if (!kept.count(wire::key_of(tx))) book_.rejected(wire::key_of(tx));
      for (auto& tx : keep) s.pool.push_back(std::move(tx));
      log(s.id, "reject", "block=" + id_str(id) + " dropped=" + id_str(txs.size() - kept.size()));
    }
  }
  tgcs_progress(t);
}

void World::tgcs_on_void(int t, std::uint64_t id) {
  auto& s = gcs_[static_cast<std::size_t>(t)];
  if (id < s.ledger.next_id()) return;
  erase_from(s.received, id);
  erase_from(s.tallies, id);
  erase_from(s.error_bitmaps, id);
  s.voted.erase(s.voted.lower_bound(id), s.voted.end());
  if (auto nbr = s.miner->on_void(id, now())) send_to_bo(t, *nbr);
  tgcs_finalize_own(t);
  tgcs_progress(t);
}

void World::tgcs_progress(int t) {
  auto& s = gcs_[static_cast<std::size_t>(t)];
  for (;;) {
    const std::uint64_t id = s.ledger.next_id();
    auto rit = s.received.find(id);
    if (rit == s.received.end()) return;
    auto tit = s.tallies.find(id);
    if (tit != s.tallies.end() && tit->second.status(n_tgcs()) == CommitStatus::Committed) {
      tgcs_commit(t, id);
      continue;
    }
    if (s.voted.insert(id).second) {
      const BlockPtr b = rit->second;
      const double done = std::max(s.cpu_free_s, now_s()) +
                          static_cast<double>(b->transactions.size()) * cfg_.consensus.verify_s_per_tx;
      s.cpu_free_s = done;
      queue_.schedule(std::max(now(), to_us(done)), s.id, [this, t, id, b] { tgcs_validate(t, id, b); });
    }
    return;
  }
}

void World::tgcs_validate(int t, std::uint64_t id, const BlockPtr& b) {
  auto& s = gcs_[static_cast<std::size_t>(t)];
  auto it = s.received.find(id);
  if (s.ledger.next_id() != id || it == s.received.end() || it->second != b) return;
  const auto on_chain = [&s](const wire::TxKey& k) { return s.ledger.contains(k); };
  const auto result = ledger::validate_block(id, s.ledger.tip_digest(), *b, registry_, on_chain);
  if (result.ok()) {
    s.tallies[id].add_ack(s.id);
    tgcs_vote(t, id, true, {}, 0);
  } else {
    const auto bitmap = result.tx_bitmap(b->transactions.size());
    s.tallies[id].add_error(s.id);
    auto& merged = s.error_bitmaps[id];
    if (merged.size() < bitmap.size()) merged.resize(bitmap.size(), 0);
    for (std::size_t i = 0; i < bitmap.size(); ++i) merged[i] |= bitmap[i];
    log(s.id, "error", "block=" + id_str(id) + " " + ledger::to_string(result.first()));
    tgcs_vote(t, id, false, bitmap, static_cast<std::uint8_t>(result.first()));
  }
  tgcs_progress(t);
}

void World::tgcs_commit(int t, std::uint64_t id) {
  auto& s = gcs_[static_cast<std::size_t>(t)];
  const BlockPtr b = s.received.at(id);
  const auto tally = s.tallies.at(id);
  if (tally.acks() < consensus::quorum_size(n_tgcs())) ++safety_.quorum_violations;
  s.received.erase(id);
  s.tallies.erase(id);
  s.error_bitmaps.erase(id);
  s.voted.erase(id);
  try {
    s.ledger.append(b);
  } catch (const ledger::LedgerError& e) {
    if (e.code() == ledger::LedgerErrc::ChainBreak) ++safety_.chain_breaks;
    return;
  }
  if (tally.ack_set().count(s.id))
    s.trust.add(consensus::TrustEvent::ValidBlockParticipation, trust_time(), cfg_.consensus.weights);
  if (committed_ids_.insert(id).second) {
    for (const auto& tx : b->transactions) book_.committed(wire::key_of(tx), now());
    log(s.id, "commit", "id=" + id_str(id) + " miner=" + id_str(b->header.miner.value) +
                            " txs=" + id_str(b->transactions.size()));
  }
  s.miner->on_commit(id);
  for (int g : s.gccs) send(gcs_to_gcs(t, g), block_bytes(*b), gcs_[static_cast<std::size_t>(g)].id,
                            [this, g, b] { gcc_receive(g, b); });
  distribute(t, b);
  tgcs_finalize_own(t);
}

// ---- block orderer ----

void World::bo_receive(int c, const Message& m) {
  if (c != acting_bo_) {
    const int to = acting_bo_;
    send({cas_[static_cast<std::size_t>(c)].trunk.get()}, wire::encoded_size(m), cas_[static_cast<std::size_t>(to)].id,
         [this, to, m] { bo_receive(to, m); });
    return;
  }
  auto& ca = cas_[static_cast<std::size_t>(c)];
  if (ca.awaiting_handoff || !ca.orderer) {
    ca.deferred.push_back(m);
    return;
  }
  bo_handle(c, m);
}

void World::bo_handle(int c, const Message& m) {
  auto& ca = cas_[static_cast<std::size_t>(c)];
  if (const auto* n = std::get_if<wire::NbrMsg>(&m)) {
    if (ca.orderer->on_nbr(*n, now())) bo_schedule_close(c);
  } else if (const auto* a = std::get_if<wire::BlockAckMsg>(&m)) {
    bo_vote(c, a->block_id, a->tgcs, true);
  } else if (const auto* e = std::get_if<wire::BlockErrorMsg>(&m)) {
    bo_vote(c, e->block_id, e->tgcs, false);
  }
}

void World::bo_vote(int c, std::uint64_t id, NodeId voter, bool ack) {
  auto& ca = cas_[static_cast<std::size_t>(c)];
  if (id <= ca.orderer->committed_watermark()) return;
  auto& tally = ca.tallies[id];
  if (ack)
    tally.add_ack(voter);
  else
    tally.add_error(voter);
  switch (tally.status(n_tgcs())) {
    case CommitStatus::Committed:
      ca.tallies.erase(id);
      if (ca.orderer->on_commit(id, now())) bo_schedule_close(c);
      bo_arm_timer(c);
      break;
    case CommitStatus::Rejected:
      ca.tallies.erase(id);
      bo_void(c, id);
      break;
    case CommitStatus::Pending: break;
  }
}

void World::bo_schedule_close(int c) {
  queue_.schedule(cas_[static_cast<std::size_t>(c)].orderer->window_close_at(), cas_[static_cast<std::size_t>(c)].id,
                  [this, c] { bo_close_window(c); });
}

void World::bo_close_window(int c) {
  auto& ca = cas_[static_cast<std::size_t>(c)];
  if (c != acting_bo_ || !ca.orderer || ca.awaiting_handoff || !ca.orderer->window_open() ||
      now() < ca.orderer->window_close_at())
    return;
  bo_assign(c, ca.orderer->close_window(now()));
  bo_arm_timer(c);
}

void World::bo_assign(int c, const std::vector<wire::Assignment>& a) {
  if (a.empty()) return;
  std::string detail;
  for (const auto& x : a) detail += id_str(x.block_id) + "->" + id_str(x.tgcs.value) + " ";
  log(cas_[static_cast<std::size_t>(c)].id, "assign", detail);
  bo_broadcast(c, wire::AssignMsg{a});
}

void World::bo_broadcast(int c, const Message& m) {
  const std::size_t bytes = wire::encoded_size(m);
  for (int t : tgcs_)
    send(ca_to_gcs(c, t), bytes, gcs_[static_cast<std::size_t>(t)].id, [this, t, m] { tgcs_on_bo_message(t, m); });
}

void World::bo_arm_timer(int c) {
  auto& ca = cas_[static_cast<std::size_t>(c)];
  const auto& o = *ca.orderer;
  if (!o.outstanding().count(o.committed_watermark() + 1)) return;
  const std::uint64_t at = std::max(o.deadline_of_next(), now());
  if (ca.timer_at_us == at) return;
  ca.timer_at_us = at;
  queue_.schedule(at, ca.id, [this, c, at] {
    auto& x = cas_[static_cast<std::size_t>(c)];
    if (x.timer_at_us != at) return;
    x.timer_at_us = 0;
    bo_timer(c);
  });
}

void World::bo_timer(int c) {
  auto& ca = cas_[static_cast<std::size_t>(c)];
  if (c != acting_bo_ || !ca.orderer || ca.awaiting_handoff) return;
  if (auto id = ca.orderer->overdue(now())) bo_void(c, *id);
  bo_arm_timer(c);
}

void World::bo_void(int c, std::uint64_t id) {
  auto& ca = cas_[static_cast<std::size_t>(c)];
  if (!ca.orderer->apply_void(id, now())) return;
  ++blocks_voided_;
  log(ca.id, "void", "id=" + id_str(id));
  erase_from(ca.tallies, id);
  bo_broadcast(c, wire::VoidMsg{id});
  auto& o = *ca.orderer;
  if (o.open_if_waiting(now())) bo_schedule_close(c);
  bo_arm_timer(c);
}

void World::bo_rotate() {
  const int next = static_cast<int>(consensus::bo_index(cas_.size(), now_s(), cfg_.consensus.t_bo_s));
  if (next == acting_bo_) return;
  const int old = acting_bo_;
  acting_bo_ = next;
  auto& from = cas_[static_cast<std::size_t>(old)];
  auto& to = cas_[static_cast<std::size_t>(next)];
  to.awaiting_handoff = true;
  log(from.id, "rotate", "to=" + id_str(to.id.value));
  // A BO still waiting for its own handoff passes it on when it arrives.
  if (!from.orderer) return;
  wire::BoHandoffMsg h{from.id, to.id, from.orderer->snapshot()};
  Tallies tallies = std::move(from.tallies);
  from.tallies.clear();
  from.orderer.reset();
  from.timer_at_us = 0;
  send({from.trunk.get()}, wire::encoded_size(Message(h)), to.id,
       [this, next, h, tallies = std::move(tallies)]() mutable { bo_on_handoff(next, h, std::move(tallies)); });
}

void World::bo_on_handoff(int c, const wire::BoHandoffMsg& h, Tallies tallies) {
  auto& ca = cas_[static_cast<std::size_t>(c)];
  ca.awaiting_handoff = false;
  if (c != acting_bo_) {
    const int to = acting_bo_;
    auto deferred = std::move(ca.deferred);
    ca.deferred.clear();
    wire::BoHandoffMsg fwd{ca.id, cas_[static_cast<std::size_t>(to)].id, h.state};
    send({ca.trunk.get()}, wire::encoded_size(Message(fwd)), cas_[static_cast<std::size_t>(to)].id,
         [this, to, fwd, tallies = std::move(tallies)]() mutable { bo_on_handoff(to, fwd, std::move(tallies)); });
    for (const auto& m : deferred) bo_receive(c, m);
    return;
  }
  ca.orderer = consensus::BlockOrderer::restore(orderer_config(), h.state, now());
  for (auto& [id, t] : tallies) ca.tallies.try_emplace(id, std::move(t));
  if (ca.orderer->window_open())
    bo_schedule_close(c);
  auto deferred = std::move(ca.deferred);
  ca.deferred.clear();
  for (const auto& m : deferred) {
    if (!ca.orderer) break;
    bo_handle(c, m);
  }
  // Votes handed over may already decide a block.
  std::vector<std::uint64_t> decided;
  for (const auto& [id, t] : ca.tallies)
    if (t.status(n_tgcs()) != CommitStatus::Pending) decided.push_back(id);
  for (auto id : decided) {
    auto it = ca.tallies.find(id);
    if (it == ca.tallies.end()) continue;
    const auto st = it->second.status(n_tgcs());
    ca.tallies.erase(it);
    if (st == CommitStatus::Committed) {
      if (ca.orderer->on_commit(id, now())) bo_schedule_close(c);
    } else
      bo_void(c, id);
  }
  bo_arm_timer(c);
}

}  // namespace proact::sim::detail

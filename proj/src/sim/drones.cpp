// Drone agents: flight, T3 reports, command and block reception, access
// checks on incoming requests, and the two attacks of malicious drones.

#include <algorithm>
#include <cmath>

#include "proact/crypto/sealing.hpp"
#include "proact/wire/codec.hpp"
#include "world.hpp"

namespace proact::sim::detail {

namespace {

// Positions travel in decimetres; drones decide what they observe from the
// same rounded coordinates the GCS later decodes.
Vec2 quantized(Vec2 p) {
  return {static_cast<double>(std::lround(p.x * 10)) / 10.0, static_cast<double>(std::lround(p.y * 10)) / 10.0};
}

const crypto::CryptoSuite& request_suite() { return crypto::suite_for(wire::SecurityClass::S2_C1); }

}  // namespace

void World::drone_fly(Drone& d) {
  const double t = now_s();
  if (t <= d.flown_until_s) return;
  if (d.energy.active()) d.energy.flight(t - d.flown_until_s);
  d.flown_until_s = t;
}

bool World::drone_active(Drone& d) {
  drone_fly(d);
  return d.energy.active();
}

std::vector<SiteClaim> World::observe(Vec2 pos) const {
  std::vector<SiteClaim> out;
  for (const auto& s : topo_.sites)
    if (distance(pos, s.pos) <= cfg_.detection.r_detect_m) out.push_back({s.id, s.pos});
  return out;
}

void World::drone_t3_tick(int di) {
  Drone& d = drones_[static_cast<std::size_t>(di)];
  if (!drone_active(d)) return;
  DataReport r;
  r.pos = quantized(d.mobility.position(now_s()));
  r.at_us = now();
  r.observed = observe(r.pos);
  if (d.malicious) {
    // Colluders back up recent fabrications near them.
    const std::uint64_t keep = 3 * to_us(cfg_.detection.w_detect_s);
    while (!fabricated_.empty() && fabricated_.front().at_us + keep < now()) fabricated_.erase(fabricated_.begin());
    for (const auto& f : fabricated_)
      if (distance(f.claim.pos, r.pos) <= cfg_.detection.r_detect_m) r.observed.push_back(f.claim);
  }
  drone_send_report(di, std::move(r), false);
}

void World::drone_send_report(int di, DataReport report, bool attack) {
  Drone& d = drones_[static_cast<std::size_t>(di)];
  report.attachment_bytes = static_cast<std::uint32_t>(cfg_.data_tx_size);
  report.attachment_tag = d.rng();
  TxSpec spec;
  spec.kind = TxKind::T3;
  spec.creator = d.id;
  spec.tx_seq = d.next_seq++;
  spec.at_us = now();
  spec.suite = &suite(TxKind::T3, d.mission_s);
  spec.plaintext = encode_report(report);
  auto tx = build_transaction(spec, d.keys, nullptr, d.rng);
  const auto key = wire::key_of(tx);
  const std::size_t bytes = carried_size(tx, cfg_.data_tx_size);
  d.energy.crypto_op(*spec.suite, bytes);
  book_.generated(key, TxKind::T3, now(), cfg_.data_tx_size, attack);
  if (attack) {
    AttackRecord a;
    a.kind = AttackKind::FalseData;
    a.attacker = d.id;
    a.at_us = now();
    a.report = key;
    data_attacks_[key] = attacks_.size();
    attacks_.push_back(a);
    log(d.id, "attack", "false-data seq=" + std::to_string(key.tx_seq));
  }
  const int g = d.gcs;
  drone_to_gcs(
      di, bytes, [this, g, tx] { gcs_on_t3(g, tx); },
      [this, key] {
        book_.dropped(key);
        log(key.creator, "drop", "T3 seq=" + std::to_string(key.tx_seq));
      });
}

void World::drone_to_gcs(int di, std::size_t bytes, std::function<void()> delivered, std::function<void()> lost) {
  const Drone& d = drones_[static_cast<std::size_t>(di)];
  send({uavns_[static_cast<std::size_t>(d.uavn)].up.get()}, bytes, gcs_[static_cast<std::size_t>(d.gcs)].id,
       std::move(delivered), std::move(lost),
       [this, di](std::size_t, std::size_t b) { drones_[static_cast<std::size_t>(di)].energy.sent(b); });
}

void World::drone_to_drone(int from, int to, std::size_t bytes, std::function<void()> delivered) {
  Drone& a = drones_[static_cast<std::size_t>(from)];
  Drone& b = drones_[static_cast<std::size_t>(to)];
  const auto sender_energy = [this, from](std::size_t hop, std::size_t n) {
    if (hop == 0) drones_[static_cast<std::size_t>(from)].energy.sent(n);
  };
  const double range = cfg_.network[LinkClass::UavUav].range_m;
  if (a.uavn == b.uavn && distance(a.mobility.position(now_s()), b.mobility.position(now_s())) <= range) {
    send({uavns_[static_cast<std::size_t>(a.uavn)].mesh.get()}, bytes, b.id, std::move(delivered), {}, sender_energy);
    return;
  }
  // Out of direct range: relayed through the GCS(s).
  std::vector<Channel*> path{uavns_[static_cast<std::size_t>(a.uavn)].up.get()};
  if (a.gcs != b.gcs)
    for (auto* c : gcs_to_gcs(a.gcs, b.gcs)) path.push_back(c);
  path.push_back(uavns_[static_cast<std::size_t>(b.uavn)].down.get());
  send(std::move(path), bytes, b.id, std::move(delivered), {}, sender_energy);
}

void World::drone_on_command(int di, const wire::Transaction& tx, std::size_t bytes) {
  Drone& d = drones_[static_cast<std::size_t>(di)];
  if (!drone_active(d)) return;
  const auto& s = crypto::suite_of(tx);
  d.energy.received(bytes);
  d.energy.crypto_op(s, tx.payload.size());  // open
  d.energy.crypto_op(s, bytes);              // verify
}

void World::drone_on_block(int di, const BlockPtr& b, std::size_t bytes) {
  Drone& d = drones_[static_cast<std::size_t>(di)];
  if (!drone_active(d)) return;
  d.energy.received(bytes);
  try {
    d.ledger.store(b);
  } catch (const ledger::LedgerError& e) {
    log(d.id, "drop", std::string("block ") + std::to_string(b->header.block_id) + " " + ledger::to_string(e.code()));
    return;
  }
  if (d.ledger.current_bytes() > d.ledger.capacity_bytes()) ++safety_.capacity_violations;
}

void World::drone_attack_tick(int di) {
  Drone& d = drones_[static_cast<std::size_t>(di)];
  if (!drone_active(d)) return;
  const bool access = std::bernoulli_distribution(0.5)(d.rng);
  if (access && drones_.size() >= 2)
    drone_attack_access(di);
  else
    drone_attack_false_data(di);
}

void World::drone_attack_access(int di) {
  Drone& d = drones_[static_cast<std::size_t>(di)];
  auto ti = std::uniform_int_distribution<int>(0, static_cast<int>(drones_.size()) - 2)(d.rng);
  if (ti >= di) ++ti;
  const Drone& target = drones_[static_cast<std::size_t>(ti)];

  // Ask for something the target owns: the first entry naming it in its
  // newest block, or a made-up key when it holds nothing yet.
  wire::TxKey key{target.id, 0};
  const auto ids = target.ledger.block_ids();
  if (!ids.empty()) {
    const wire::Block* b = target.ledger.block(ids.back());
    for (const auto& e : b->header.ta_list) {
      if (std::find(e.owners.begin(), e.owners.end(), target.id) == e.owners.end()) continue;
      key = wire::key_of(b->transactions[e.tx_index]);
      break;
    }
  }
  ledger::AccessRequest req{d.id, key, now(), {}};
  ledger::sign_access_request(req, d.keys);
  d.energy.crypto_op(request_suite(), ledger::access_request_bytes(req).size());

  AttackRecord a;
  a.kind = AttackKind::UnauthorizedAccess;
  a.attacker = d.id;
  a.target = target.id;
  a.at_us = now();
  access_attacks_[{d.id.value, now()}] = attacks_.size();
  attacks_.push_back(a);
  log(d.id, "attack", "access target=" + std::to_string(target.id.value));
  drone_to_drone(di, ti, ledger::kAccessRequestWireBytes, [this, ti, req] { drone_on_access_request(ti, req); });
}

void World::drone_attack_false_data(int di) {
  Drone& d = drones_[static_cast<std::size_t>(di)];
  DataReport r;
  r.pos = quantized(d.mobility.position(now_s()));
  r.at_us = now();
  r.observed = observe(r.pos);
  const SiteClaim fake{next_fabricated_++, r.pos};
  r.observed.push_back(fake);
  fabricated_.push_back({fake, now()});
  drone_send_report(di, std::move(r), true);
}

void World::drone_on_access_request(int ti, const ledger::AccessRequest& req) {
  Drone& t = drones_[static_cast<std::size_t>(ti)];
  // A colluding target stays silent.
  if (t.malicious || !drone_active(t)) {
    log(t.id, "access", "silent requester=" + std::to_string(req.requester.value));
    return;
  }
  t.energy.received(ledger::kAccessRequestWireBytes);
  t.energy.crypto_op(request_suite(), ledger::access_request_bytes(req).size());

  wire::TaEntry entry{0, wire::AccessClass::Single, {t.id}};
  bool found = false;
  for (auto id : t.ledger.block_ids()) {
    const wire::Block* b = t.ledger.block(id);
    for (std::size_t i = 0; i < b->transactions.size(); ++i) {
      if (wire::key_of(b->transactions[i]) != req.target) continue;
      entry = b->header.ta_list[i];
      found = true;
      break;
    }
    if (found) break;
  }
  const auto decision = ledger::check_access(t.id, req, entry, registry_);
  log(t.id, "access", std::string(decision.verdict == ledger::Verdict::Allow ? "allow" : "deny") +
                          " requester=" + std::to_string(req.requester.value) + (found ? " held" : " unknown"));
  if (decision.verdict == ledger::Verdict::Allow || !decision.incident) return;

  const auto& g = gcs_[static_cast<std::size_t>(t.gcs)];
  TxSpec spec;
  spec.kind = TxKind::T4;
  spec.creator = t.id;
  spec.tx_seq = t.next_seq++;
  spec.at_us = now();
  spec.owners = {g.id};
  spec.suite = &suite(TxKind::T4, t.mission_s);
  spec.plaintext = decision.incident->report_body();
  auto tx = build_transaction(spec, t.keys, &g.keys.public_key, t.rng);
  const std::size_t bytes = wire::encoded_size(tx);
  t.energy.crypto_op(*spec.suite, spec.plaintext.size());  // seal
  t.energy.crypto_op(*spec.suite, bytes);                  // sign
  const auto key = wire::key_of(tx);
  book_.generated(key, TxKind::T4, now(), spec.plaintext.size());
  log(t.id, "incident", "offender=" + std::to_string(req.requester.value));
  const int gi = t.gcs;
  drone_to_gcs(
      ti, bytes, [this, gi, tx] { gcs_on_t4(gi, tx); }, [this, key] { book_.dropped(key); });
}

}  // namespace proact::sim::detail

#include "proact/ledger/genesis.hpp"

#include <algorithm>
#include <cstring>

#include "proact/crypto/sealing.hpp"
#include "proact/wire/codec.hpp"
#include "proact/wire/merkle.hpp"

namespace proact::ledger {

namespace {
constexpr char kMagic[4] = {'R', 'E', 'G', '1'};
}

std::vector<NodeId> NodeRegistry::with_role(wire::Role role) const {
  std::vector<NodeId> out;
  for (const auto& [id, r] : nodes_)
    if (r.info.role == role) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

wire::Bytes encode_registration(const Registration& r) {
  wire::Bytes out;
  wire::ByteWriter w(out);
  w.raw(std::string_view(kMagic, 4));
  w.u8(static_cast<std::uint8_t>(r.info.role));
  w.u32(r.info.id.value);
  w.raw(r.public_key);
  w.u8(r.tgcs ? 1 : 0);
  w.u16(static_cast<std::uint16_t>(r.info.owner_real_id.size()));
  w.raw(r.info.owner_real_id);
  return out;
}

std::optional<Registration> decode_registration(wire::ByteView payload) {
  if (payload.size() < 4 || std::memcmp(payload.data(), kMagic, 4) != 0) return std::nullopt;
  try {
    wire::ByteReader rd(payload.subspan(4));
    Registration r;
    const auto role = rd.u8();
    if (role < 1 || role > 5) return std::nullopt;
    r.info.role = static_cast<wire::Role>(role);
    r.info.id = NodeId{rd.u32()};
    const auto key = rd.raw(wire::kDigestLen);
    std::copy(key.begin(), key.end(), r.public_key.begin());
    r.tgcs = rd.u8() != 0;
    const auto len = rd.u16();
    const auto name = rd.raw(len);
    r.info.owner_real_id.assign(name.begin(), name.end());
    if (rd.remaining() != 0) return std::nullopt;
    return r;
  } catch (const wire::WireError&) {
    return std::nullopt;
  }
}

wire::Transaction registration_tx(const Registration& r, const crypto::KeyPair& ca, std::uint64_t tx_seq,
                                  std::uint64_t at_us) {
  wire::Transaction tx;
  tx.creator = NodeId{ca.holder.id};
  tx.tx_seq = tx_seq;
  tx.created_at_us = at_us;
  tx.access_class = wire::AccessClass::Public;
  tx.security_class = wire::SecurityClass::S1;
  tx.block_target = wire::BlockType::BlockT2;
  tx.payload = encode_registration(r);
  crypto::sign_transaction(tx, ca);
  return tx;
}

wire::Block make_genesis(const std::vector<Registration>& nodes, const crypto::KeyPair& ca_keys, NodeId ca,
                         std::uint64_t at_us) {
  std::vector<Registration> ordered = nodes;
  std::stable_sort(ordered.begin(), ordered.end(), [](const Registration& a, const Registration& b) {
    return (a.info.role == wire::Role::CA) > (b.info.role == wire::Role::CA);
  });
  wire::Block g;
  g.header.block_id = 0;
  g.header.block_type = wire::BlockType::BlockT2;
  g.header.miner = ca;
  g.header.timestamp_us = at_us;
  std::uint64_t seq = 0;
  for (const auto& r : ordered) g.transactions.push_back(registration_tx(r, ca_keys, seq++, at_us));
  g.header.ta_list = wire::build_ta_list(g.transactions);
  g.header.merkle_root = wire::merkle_root_of(g.transactions);
  return g;
}

void import_registrations(const wire::Block& block, NodeRegistry& registry, bool bootstrap) {
  for (const auto& tx : block.transactions) {
    if (tx.access_class != wire::AccessClass::Public) continue;
    if (!bootstrap) {
      const auto* signer = registry.find(tx.creator);
      if (!signer || signer->info.role != wire::Role::CA) continue;
    }
    if (auto r = decode_registration(tx.payload)) registry.add(*r);
  }
}

}  // namespace proact::ledger

#pragma once

#include "fixtures.hpp"
#include "proact/ledger/genesis.hpp"
#include "proact/ledger/full_ledger.hpp"

namespace fixtures {

/// CA 1, GCS 10 and 11, drones 100..104; keys from fixtures::key.
struct SmallNetwork {
  ledger::NodeRegistry registry;
  ledger::FullLedger chain;

  SmallNetwork() {
    std::vector<ledger::Registration> regs;
    auto reg = [&](std::uint32_t id, wire::Role role, const char* owner = "") {
      regs.push_back({{wire::NodeId{id}, role, owner}, key(id).public_key, false});
    };
    reg(1, wire::Role::CA, "authority");
    reg(10, wire::Role::GCS);
    reg(11, wire::Role::GCS);
    for (std::uint32_t d = 100; d < 105; ++d) reg(d, wire::Role::UAV, "owner-a");
    const auto g = ledger::make_genesis(regs, key(1), wire::NodeId{1}, 0);
    ledger::import_registrations(g, registry, true);
    chain.append(g);
  }

  /// Valid successor block of the current tip.
  wire::Block successor(std::vector<wire::Transaction> txs, wire::BlockType type = wire::BlockType::BlockT1) {
    return make_block(chain.next_id(), chain.tip_digest(), std::move(txs), type);
  }
};

/// T1 command from GCS 10 to `drone` with the given topic.
inline wire::Transaction command_to(std::uint32_t drone, std::uint64_t seq, std::uint32_t topic = 0,
                                    std::size_t plain = 100) {
  wire::Transaction tx;
  tx.creator = wire::NodeId{10};
  tx.tx_seq = seq;
  tx.created_at_us = seq * 1000;
  tx.topic = topic;
  tx.access_class = wire::AccessClass::Single;
  tx.owners = {wire::NodeId{drone}};
  tx.security_class = wire::SecurityClass::S2_C1;
  tx.block_target = wire::BlockType::BlockT1;
  tx.payload = crypto::seal(crypto::suite_for(tx.security_class), key(drone).public_key, crypto::Nonce{}, pattern(plain));
  crypto::sign_transaction(tx, key(10));
  return tx;
}

}  // namespace fixtures

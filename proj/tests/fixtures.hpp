#pragma once

#include <numeric>

#include "proact/crypto/keys.hpp"
#include "proact/crypto/sealing.hpp"
#include "proact/wire/codec.hpp"
#include "proact/wire/merkle.hpp"

namespace fixtures {

using namespace proact;

inline wire::Bytes pattern(std::size_t n, std::uint8_t start = 0) {
  wire::Bytes b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>(start + i);
  return b;
}

inline crypto::KeyPair key(std::uint32_t id) { return crypto::KeyPair::derive(7, crypto::Holder::node(wire::NodeId{id})); }

/// 100-byte T1 command from GCS 10 to drone 100, sealed under S2_C1.
inline wire::Transaction t1_command(std::uint64_t seq = 1) {
  wire::Transaction tx;
  tx.creator = wire::NodeId{10};
  tx.tx_seq = seq;
  tx.created_at_us = 1'000'000;
  tx.access_class = wire::AccessClass::Single;
  tx.owners = {wire::NodeId{100}};
  tx.security_class = wire::SecurityClass::S2_C1;
  tx.block_target = wire::BlockType::BlockT1;
  const auto& suite = crypto::suite_for(tx.security_class);
  tx.payload = crypto::seal(suite, key(100).public_key, crypto::Nonce{1, 2, 3, 4, 5, 6, 7, 8}, pattern(100));
  crypto::sign_transaction(tx, key(10));
  return tx;
}

/// 10 KB public T3 data report from drone 100, S1.
inline wire::Transaction t3_report(std::uint64_t seq = 1) {
  wire::Transaction tx;
  tx.creator = wire::NodeId{100};
  tx.tx_seq = seq;
  tx.created_at_us = 2'000'000;
  tx.access_class = wire::AccessClass::Public;
  tx.security_class = wire::SecurityClass::S1;
  tx.block_target = wire::BlockType::BlockT2;
  tx.payload = pattern(10240);
  crypto::sign_transaction(tx, key(100));
  return tx;
}

inline wire::Block make_block(std::uint64_t id, const wire::Digest& prev, std::vector<wire::Transaction> txs,
                              wire::BlockType type = wire::BlockType::BlockT1) {
  wire::Block b;
  b.header.block_id = id;
  b.header.block_type = type;
  b.header.miner = wire::NodeId{10};
  b.header.timestamp_us = 5'000'000 + id;
  b.header.prev_hash = prev;
  b.transactions = std::move(txs);
  b.header.ta_list = wire::build_ta_list(b.transactions);
  if (!b.transactions.empty()) b.header.merkle_root = wire::merkle_root_of(b.transactions);
  return b;
}

}  // namespace fixtures

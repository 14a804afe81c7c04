#pragma once

// Core value types shared by every layer: node identities, transactions,
// block headers and blocks. All values are plain aggregates with value
// semantics; encodings live in codec.hpp.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace proact::wire {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline constexpr std::size_t kDigestLen = 28;
using Digest = std::array<std::uint8_t, kDigestLen>;

/// Network-wide numeric identity. The wire carries only this 32-bit value.
struct NodeId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const NodeId&) const = default;
};

enum class Role : std::uint8_t { CA = 1, GCS = 2, TGCS = 3, UAV = 4, BO = 5 };

/// Registration identity of a node. owner_real_id links a drone to the
/// real-world owner that registered it.
struct NodeInfo {
  NodeId id;
  Role role = Role::UAV;
  std::string owner_real_id;
};

enum class AccessClass : std::uint8_t { Public = 1, Single = 2, Group = 3 };
enum class SecurityClass : std::uint8_t { S1 = 1, S2_C1 = 2, S2_C2 = 3 };
enum class BlockType : std::uint8_t { BlockT1 = 1, BlockT2 = 2 };

struct Transaction {
  NodeId creator;
  std::uint64_t tx_seq = 0;
  std::uint64_t created_at_us = 0;
  std::uint32_t topic = 0;  // 0 = no supersession semantics
  AccessClass access_class = AccessClass::Public;
  std::vector<NodeId> owners;
  SecurityClass security_class = SecurityClass::S1;
  BlockType block_target = BlockType::BlockT2;
  std::uint8_t enc_id = 0;
  std::uint8_t hash_id = 0;
  std::string enc_par;
  std::string hash_par;
  Bytes payload;
  Bytes signature;

  bool operator==(const Transaction&) const = default;
};

/// One Transaction Access list entry; mirrors a transaction's access class
/// and owners.
struct TaEntry {
  std::uint16_t tx_index = 0;
  AccessClass access_class = AccessClass::Public;
  std::vector<NodeId> owners;

  bool operator==(const TaEntry&) const = default;
};

struct BlockHeader {
  std::uint8_t version = 1;
  std::uint64_t block_id = 0;
  BlockType block_type = BlockType::BlockT2;
  NodeId miner;
  std::uint64_t timestamp_us = 0;
  Digest prev_hash{};
  Digest merkle_root{};
  std::vector<TaEntry> ta_list;

  bool operator==(const BlockHeader&) const = default;
};

struct Block {
  BlockHeader header;
  std::vector<Transaction> transactions;

  bool operator==(const Block&) const = default;
};

/// (creator, tx_seq) uniquely names a transaction network-wide.
struct TxKey {
  NodeId creator;
  std::uint64_t tx_seq = 0;

  constexpr auto operator<=>(const TxKey&) const = default;
};

inline TxKey key_of(const Transaction& tx) { return {tx.creator, tx.tx_seq}; }

/// Number of owners required by an access class (0, 1, or at least 2).
constexpr bool owner_count_matches(AccessClass ac, std::size_t n) {
  switch (ac) {
    case AccessClass::Public: return n == 0;
    case AccessClass::Single: return n == 1;
    case AccessClass::Group: return n >= 2;
  }
  return false;
}

TaEntry ta_entry_for(const Transaction& tx, std::uint16_t index);

const char* to_string(AccessClass);
const char* to_string(SecurityClass);
const char* to_string(BlockType);
const char* to_string(Role);

}  // namespace proact::wire

template <>
struct std::hash<proact::wire::NodeId> {
  std::size_t operator()(const proact::wire::NodeId& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

template <>
struct std::hash<proact::wire::TxKey> {
  std::size_t operator()(const proact::wire::TxKey& k) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(k.creator.value) << 40) ^ k.tx_seq);
  }
};

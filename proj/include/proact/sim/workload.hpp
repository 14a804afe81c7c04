#pragma once

// Transaction kinds T1..T5 and their construction.
//
//   T1  GCS -> drone command          Single  S2  BlockT1
//   T2  GCS -> drone group command    Group   S2  BlockT1
//   T3  drone -> GCS data report      Public  S1  BlockT2
//   T4  drone -> GCS incident         Single  S2  BlockT1
//   T5  CA -> GCS command             Single  S1  BlockT2
//
// A T3 payload is a compact sensing report plus the declared size of its
// data attachment; the attachment bytes are carried by the network and
// energy accounting but not materialized.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "proact/crypto/keys.hpp"
#include "proact/crypto/sealing.hpp"
#include "proact/sim/topology.hpp"
#include "proact/wire/types.hpp"

namespace proact::sim {

enum class TxKind : std::uint8_t { T1 = 1, T2, T3, T4, T5 };
const char* to_string(TxKind);

struct TxClass {
  wire::AccessClass access;
  crypto::SecurityLevel level;
  wire::BlockType target;
};

TxClass classify(TxKind kind);

/// Suite for a transaction of `kind` on a mission of `mission_s`. With
/// tiering off every kind uses S1.
const crypto::CryptoSuite& suite_for_kind(TxKind kind, double mission_s, bool tiering);

struct TxSpec {
  TxKind kind = TxKind::T1;
  wire::NodeId creator;
  std::uint64_t tx_seq = 0;
  std::uint64_t at_us = 0;
  std::vector<wire::NodeId> owners;  // sorted for groups
  const crypto::CryptoSuite* suite = nullptr;
  wire::Bytes plaintext;
};

/// Builds and signs the transaction; sealed kinds are sealed to
/// `recipient_public` with a nonce drawn from `rng`.
wire::Transaction build_transaction(const TxSpec& spec, const crypto::KeyPair& creator,
                                    const wire::Digest* recipient_public, std::mt19937_64& rng);

/// Deterministic filler for command payloads.
wire::Bytes command_payload(std::size_t n, std::uint64_t tag);

/// A site the reporting drone asserts is present.
struct SiteClaim {
  std::uint32_t site = 0;
  Vec2 pos;
  bool operator==(const SiteClaim&) const = default;
};

/// Site ids at or above this value never exist in the ground truth.
inline constexpr std::uint32_t kFabricatedSiteBase = 0x80000000u;

struct DataReport {
  Vec2 pos;
  std::uint64_t at_us = 0;
  std::vector<SiteClaim> observed;
  std::uint32_t attachment_bytes = 0;
  std::uint64_t attachment_tag = 0;
  bool operator==(const DataReport&) const = default;
};

wire::Bytes encode_report(const DataReport& r);
std::optional<DataReport> decode_report(wire::ByteView payload);

/// Bytes a transaction occupies on the network: its encoding plus any T3
/// attachment not materialized in the payload.
std::size_t carried_size(const wire::Transaction& tx, std::size_t attachment_bytes);

}  // namespace proact::sim

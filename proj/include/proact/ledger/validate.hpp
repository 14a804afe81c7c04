#pragma once

#include <functional>
#include <string>
#include <vector>

#include "proact/ledger/registry.hpp"
#include "proact/wire/types.hpp"

namespace proact::ledger {

/// Validation checks, in the order validate_block runs them.
enum class BlockErrc : std::uint8_t {
  BlockId = 1,
  PrevHash,
  MerkleRoot,
  UnknownCreator,
  Signature,
  TaMismatch,
  AccessEnc,
  BlockType,
  DuplicateTx,
  Empty,
};

const char* to_string(BlockErrc);

struct BlockIssue {
  BlockErrc code;
  int tx_index = -1;  // -1 for header-level issues

  bool operator==(const BlockIssue&) const = default;
};

struct ValidationResult {
  std::vector<BlockIssue> issues;

  bool ok() const { return issues.empty(); }
  /// First failing check, reported in BLOCK_ERROR.
  BlockErrc first() const { return issues.front().code; }
  /// Bit i set when transaction i has an issue.
  wire::Bytes tx_bitmap(std::size_t tx_count) const;
  bool has(BlockErrc c) const;
};

/// True if (creator, tx_seq) is already on the chain.
using OnChainFn = std::function<bool(const wire::TxKey&)>;

ValidationResult validate_block(std::uint64_t expected_id, const wire::Digest& tip_digest, const wire::Block& block,
                                const NodeRegistry& registry, const OnChainFn& on_chain = {});

/// Per-transaction checks a miner applies before including a transaction:
/// known creator, valid signature, access/enc consistency.
std::vector<BlockErrc> validate_transaction(const wire::Transaction& tx, const NodeRegistry& registry);

}  // namespace proact::ledger

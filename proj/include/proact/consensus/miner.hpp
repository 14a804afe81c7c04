#pragma once

// TGCS miner pipeline. A pending block is assembled with everything but its
// id and prev_hash, waits for an id from the BO, then for the commit of its
// predecessor, and is then finalized and broadcast.

#include <deque>
#include <optional>
#include <vector>

#include "proact/ledger/validate.hpp"
#include "proact/wire/messages.hpp"

namespace proact::consensus {

using wire::NodeId;

enum class PendingState : std::uint8_t { AwaitingId, AwaitingPredecessor, Broadcast, Committed, Voided };

const char* to_string(PendingState);

struct PendingBlock {
  std::uint64_t local_seq = 0;
  std::optional<std::uint64_t> block_id;
  wire::Block block;
  PendingState state = PendingState::AwaitingId;
  std::uint64_t assembled_us = 0;
};

struct RejectedTx {
  wire::Transaction tx;
  std::vector<ledger::BlockErrc> reasons;
};

struct AssembleResult {
  std::size_t blocks = 0;
  std::optional<wire::NbrMsg> nbr;
  std::vector<RejectedTx> rejected;
  /// Valid transactions beyond max_block_txs, left for the next assembly.
  std::vector<wire::Transaction> deferred;
};

class Miner {
 public:
  explicit Miner(NodeId self, std::size_t max_block_txs = 4096) : self_(self), max_block_txs_(max_block_txs) {}

  /// Validates the candidates, drops invalid ones and ones already on chain,
  /// and builds at most one BlockT1 and one BlockT2 pending block. Returns
  /// the NBR asking for one id per new block; nothing when no transaction
  /// survives.
  AssembleResult assemble(std::vector<wire::Transaction> candidates, const ledger::NodeRegistry& registry,
                          const ledger::OnChainFn& on_chain, std::uint64_t now_us);

  /// Binds the ids addressed to this miner, lowest first, to the oldest
  /// blocks still awaiting an id.
  void on_assign(const wire::AssignMsg& msg);

  /// Finalizes the pending block holding id tip_id + 1, if any: fills
  /// prev_hash and returns it for broadcast.
  std::optional<wire::Block> try_finalize(std::uint64_t tip_id, const wire::Digest& tip_digest);

  void on_commit(std::uint64_t block_id);

  /// Applies VOID: the voided block goes back to AwaitingId (the returned
  /// NBR re-requests an id); higher ids shift down by one.
  std::optional<wire::NbrMsg> on_void(std::uint64_t block_id, std::uint64_t now_us);

  /// A block of ours was rejected by quorum. Transactions flagged in the
  /// bitmap are dropped; the others are returned for the next assembly.
  std::vector<wire::Transaction> on_rejected(std::uint64_t block_id, const wire::Bytes& tx_bitmap);

  NodeId id() const { return self_; }
  const std::deque<PendingBlock>& pending() const { return pending_; }
  const PendingBlock* find(std::uint64_t block_id) const;
  std::size_t in_flight() const;

 private:
  PendingBlock* find_mut(std::uint64_t block_id);
  void prune();

  NodeId self_;
  std::size_t max_block_txs_;
  std::uint64_t next_local_seq_ = 0;
  std::deque<PendingBlock> pending_;
};

}  // namespace proact::consensus

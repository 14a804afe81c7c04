#pragma once

// Capacity-bounded partial chain held by a drone: only BlockT1 blocks whose
// TA list names the drone. Blocks are not linked by prev_hash here since
// predecessors are usually missing.

#include <map>
#include <vector>

#include "proact/ledger/full_ledger.hpp"

namespace proact::ledger {

enum class BraPolicy : std::uint8_t { OldestFirst, OutdatedFirst };

inline constexpr std::size_t kDefaultDroneCapacity = std::size_t{4} << 20;

class DroneLedger {
 public:
  explicit DroneLedger(NodeId owner, std::size_t capacity_bytes = kDefaultDroneCapacity,
                       BraPolicy policy = BraPolicy::OldestFirst)
      : owner_(owner), capacity_(capacity_bytes), policy_(policy) {}

  /// Stores the block, evicting per the policy until it fits. Returns the
  /// evicted block ids in eviction order. Throws BlockTooLarge if the block
  /// alone exceeds capacity and NotForThisDrone if it is not a BlockT1 block
  /// naming this drone. Re-storing a held block is a no-op.
  std::vector<std::uint64_t> store(BlockPtr block);

  NodeId owner() const { return owner_; }
  std::size_t capacity_bytes() const { return capacity_; }
  std::size_t current_bytes() const { return current_; }
  BraPolicy policy() const { return policy_; }
  std::size_t block_count() const { return blocks_.size(); }
  bool holds_block(std::uint64_t id) const { return blocks_.count(id) != 0; }
  std::vector<std::uint64_t> block_ids() const;

  const wire::Transaction* find(const wire::TxKey& k) const;
  /// Null when the block is not held.
  const wire::Block* block(std::uint64_t id) const;

  /// Sum of stored block sizes recomputed from the encodings.
  std::size_t recount_bytes() const;

  /// True if the TA list names `drone`.
  static bool names(const wire::Block& block, NodeId drone);

 private:
  struct Stored {
    BlockPtr block;
    std::size_t bytes = 0;
  };

  std::uint64_t pick_victim(const wire::Block& incoming) const;
  bool outdated(const wire::Block& candidate, const wire::Block& incoming) const;

  NodeId owner_;
  std::size_t capacity_;
  BraPolicy policy_;
  std::size_t current_ = 0;
  std::map<std::uint64_t, Stored> blocks_;
};

}  // namespace proact::ledger

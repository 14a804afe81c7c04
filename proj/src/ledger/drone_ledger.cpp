#include "proact/ledger/drone_ledger.hpp"

#include <algorithm>

#include "proact/wire/codec.hpp"

namespace proact::ledger {

namespace {

bool owned_by(const wire::Transaction& tx, NodeId drone) {
  return std::find(tx.owners.begin(), tx.owners.end(), drone) != tx.owners.end();
}

}  // namespace

bool DroneLedger::names(const wire::Block& block, NodeId drone) {
  for (const auto& e : block.header.ta_list)
    if (std::find(e.owners.begin(), e.owners.end(), drone) != e.owners.end()) return true;
  return false;
}

std::vector<std::uint64_t> DroneLedger::block_ids() const {
  std::vector<std::uint64_t> ids;
  ids.reserve(blocks_.size());
  for (const auto& [id, _] : blocks_) ids.push_back(id);
  return ids;
}

const wire::Transaction* DroneLedger::find(const wire::TxKey& k) const {
  for (const auto& [id, s] : blocks_)
    for (const auto& tx : s.block->transactions)
      if (tx.creator == k.creator && tx.tx_seq == k.tx_seq) return &tx;
  return nullptr;
}

const wire::Block* DroneLedger::block(std::uint64_t id) const {
  auto it = blocks_.find(id);
  return it == blocks_.end() ? nullptr : it->second.block.get();
}

std::size_t DroneLedger::recount_bytes() const {
  std::size_t n = 0;
  for (const auto& [id, s] : blocks_) n += wire::encoded_size(*s.block);
  return n;
}

// A block is outdated when every transaction it holds for this drone has a
// topic and a newer transaction from the same creator on the same topic is
// on the ledger (or arriving with the incoming block).
bool DroneLedger::outdated(const wire::Block& candidate, const wire::Block& incoming) const {
  const auto newer_exists = [&](const wire::Transaction& tx, std::uint64_t at_block, std::size_t at_index) {
    auto scan = [&](const wire::Block& b) {
      for (std::size_t i = 0; i < b.transactions.size(); ++i) {
        const auto& o = b.transactions[i];
        if (o.creator != tx.creator || o.topic != tx.topic) continue;
        if (b.header.block_id > at_block || (b.header.block_id == at_block && i > at_index)) return true;
      }
      return false;
    };
    if (scan(incoming)) return true;
    for (auto it = blocks_.lower_bound(at_block); it != blocks_.end(); ++it)
      if (scan(*it->second.block)) return true;
    return false;
  };

  bool any_owned = false;
  for (std::size_t i = 0; i < candidate.transactions.size(); ++i) {
    const auto& tx = candidate.transactions[i];
    if (!owned_by(tx, owner_)) continue;
    any_owned = true;
    if (tx.topic == 0) return false;
    if (!newer_exists(tx, candidate.header.block_id, i)) return false;
  }
  return any_owned;
}

std::uint64_t DroneLedger::pick_victim(const wire::Block& incoming) const {
  if (policy_ == BraPolicy::OutdatedFirst) {
    for (const auto& [id, s] : blocks_)
      if (outdated(*s.block, incoming)) return id;
  }
  return blocks_.begin()->first;
}

std::vector<std::uint64_t> DroneLedger::store(BlockPtr block) {
  if (block->header.block_type != wire::BlockType::BlockT1 || !names(*block, owner_))
    throw LedgerError(LedgerErrc::NotForThisDrone, "block is not a BlockT1 block naming this drone");
  const std::size_t size = wire::encoded_size(*block);
  if (size > capacity_)
    throw LedgerError(LedgerErrc::BlockTooLarge, "block of " + std::to_string(size) + " bytes exceeds capacity " +
                                                     std::to_string(capacity_));
  if (holds_block(block->header.block_id)) return {};

  std::vector<std::uint64_t> evicted;
  while (current_ + size > capacity_) {
    const std::uint64_t victim = pick_victim(*block);
    current_ -= blocks_.at(victim).bytes;
    blocks_.erase(victim);
    evicted.push_back(victim);
  }
  current_ += size;
  const std::uint64_t id = block->header.block_id;
  blocks_.emplace(id, Stored{std::move(block), size});
  return evicted;
}

}  // namespace proact::ledger

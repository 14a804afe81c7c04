#include "proact/consensus/miner.hpp"

#include <algorithm>
#include <unordered_set>

#include "proact/wire/codec.hpp"
#include "proact/wire/merkle.hpp"

namespace proact::consensus {

const char* to_string(PendingState s) {
  switch (s) {
    case PendingState::AwaitingId: return "awaiting_id";
    case PendingState::AwaitingPredecessor: return "awaiting_predecessor";
    case PendingState::Broadcast: return "broadcast";
    case PendingState::Committed: return "committed";
    case PendingState::Voided: return "voided";
  }
  return "?";
}

AssembleResult Miner::assemble(std::vector<wire::Transaction> candidates, const ledger::NodeRegistry& registry,
                               const ledger::OnChainFn& on_chain, std::uint64_t now_us) {
  AssembleResult res;
  std::unordered_set<wire::TxKey> in_pipeline;
  for (const auto& p : pending_)
    for (const auto& tx : p.block.transactions) in_pipeline.insert(wire::key_of(tx));

  std::vector<wire::Transaction> by_type[2];
  for (auto& tx : candidates) {
    const auto key = wire::key_of(tx);
    if (in_pipeline.count(key) || (on_chain && on_chain(key))) continue;
    auto reasons = ledger::validate_transaction(tx, registry);
    if (!reasons.empty()) {
      res.rejected.push_back({std::move(tx), std::move(reasons)});
      continue;
    }
    in_pipeline.insert(key);
    by_type[tx.block_target == wire::BlockType::BlockT1 ? 0 : 1].push_back(std::move(tx));
  }

  std::uint8_t count = 0;
  for (int t = 0; t < 2; ++t) {
    if (by_type[t].empty()) continue;
    if (by_type[t].size() > max_block_txs_) {
      auto extra = by_type[t].begin() + static_cast<std::ptrdiff_t>(max_block_txs_);
      res.deferred.insert(res.deferred.end(), std::make_move_iterator(extra), std::make_move_iterator(by_type[t].end()));
      by_type[t].erase(extra, by_type[t].end());
    }
    PendingBlock p;
    p.local_seq = next_local_seq_++;
    p.assembled_us = now_us;
    auto& h = p.block.header;
    h.block_type = t == 0 ? wire::BlockType::BlockT1 : wire::BlockType::BlockT2;
    h.miner = self_;
    h.timestamp_us = now_us;
    p.block.transactions = std::move(by_type[t]);
    h.ta_list = wire::build_ta_list(p.block.transactions);
    h.merkle_root = wire::merkle_root_of(p.block.transactions);
    pending_.push_back(std::move(p));
    ++count;
  }
  res.blocks = count;
  if (count > 0) res.nbr = wire::NbrMsg{self_, now_us, count};
  return res;
}

void Miner::on_assign(const wire::AssignMsg& msg) {
  std::vector<std::uint64_t> mine;
  for (const auto& a : msg.assignments)
    if (a.tgcs == self_) mine.push_back(a.block_id);
  std::sort(mine.begin(), mine.end());
  auto it = mine.begin();
  for (auto& p : pending_) {
    if (it == mine.end()) break;
    if (p.state != PendingState::AwaitingId) continue;
    p.block_id = *it++;
    p.block.header.block_id = *p.block_id;
    p.state = PendingState::AwaitingPredecessor;
  }
}

PendingBlock* Miner::find_mut(std::uint64_t block_id) {
  for (auto& p : pending_)
    if (p.block_id == block_id && p.state != PendingState::AwaitingId) return &p;
  return nullptr;
}

const PendingBlock* Miner::find(std::uint64_t block_id) const {
  for (const auto& p : pending_)
    if (p.block_id == block_id && p.state != PendingState::AwaitingId) return &p;
  return nullptr;
}

std::optional<wire::Block> Miner::try_finalize(std::uint64_t tip_id, const wire::Digest& tip_digest) {
  PendingBlock* p = find_mut(tip_id + 1);
  if (!p || p->state != PendingState::AwaitingPredecessor) return std::nullopt;
  p->block.header.prev_hash = tip_digest;
  p->state = PendingState::Broadcast;
  return p->block;
}

void Miner::prune() {
  while (!pending_.empty() &&
         (pending_.front().state == PendingState::Committed || pending_.front().state == PendingState::Voided))
    pending_.pop_front();
}

void Miner::on_commit(std::uint64_t block_id) {
  if (PendingBlock* p = find_mut(block_id)) p->state = PendingState::Committed;
  prune();
}

std::optional<wire::NbrMsg> Miner::on_void(std::uint64_t block_id, std::uint64_t now_us) {
  bool reverted = false;
  for (auto& p : pending_) {
    if (!p.block_id || p.state == PendingState::AwaitingId || p.state == PendingState::Committed ||
        p.state == PendingState::Voided)
      continue;
    if (*p.block_id == block_id) {
      p.block_id.reset();
      p.block.header.block_id = 0;
      p.block.header.prev_hash = {};
      p.state = PendingState::AwaitingId;
      reverted = true;
    } else if (*p.block_id > block_id) {
      p.block_id = *p.block_id - 1;
      p.block.header.block_id = *p.block_id;
      if (p.state == PendingState::Broadcast) {
        p.block.header.prev_hash = {};
        p.state = PendingState::AwaitingPredecessor;
      }
    }
  }
  if (!reverted) return std::nullopt;
  return wire::NbrMsg{self_, now_us, 1};
}

std::vector<wire::Transaction> Miner::on_rejected(std::uint64_t block_id, const wire::Bytes& tx_bitmap) {
  std::vector<wire::Transaction> keep;
  PendingBlock* p = find_mut(block_id);
  if (!p) return keep;
  const auto& txs = p->block.transactions;
  for (std::size_t i = 0; i < txs.size(); ++i) {
    const bool flagged = i / 8 < tx_bitmap.size() && (tx_bitmap[i / 8] >> (i % 8)) & 1u;
    if (!flagged) keep.push_back(txs[i]);
  }
  p->state = PendingState::Voided;
  prune();
  return keep;
}

std::size_t Miner::in_flight() const {
  std::size_t n = 0;
  for (const auto& p : pending_)
    if (p.state != PendingState::Committed && p.state != PendingState::Voided) ++n;
  return n;
}

}  // namespace proact::consensus

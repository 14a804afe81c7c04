#include "proact/consensus/orderer.hpp"

#include <algorithm>

namespace proact::consensus {

BlockOrderer::BlockOrderer(OrdererConfig cfg, std::uint64_t committed_tip, std::uint64_t now_us)
    : cfg_(cfg), next_block_id_(committed_tip + 1), watermark_(committed_tip), watermark_at_us_(now_us) {}

bool BlockOrderer::on_nbr(const NbrMsg& nbr, std::uint64_t now_us) {
  if (nbr.request_count == 0) return false;
  queued_.push_back(nbr);
  if (window_open_) return false;
  window_open_ = true;
  window_close_at_ = now_us + cfg_.t_bis_us;
  return true;
}

std::vector<Assignment> BlockOrderer::issue(std::uint64_t now_us, bool all) {
  std::stable_sort(queued_.begin(), queued_.end(), [](const NbrMsg& a, const NbrMsg& b) {
    if (a.timestamp_us != b.timestamp_us) return a.timestamp_us < b.timestamp_us;
    return a.tgcs < b.tgcs;
  });
  std::vector<Assignment> out;
  if (all) {
    for (const auto& n : queued_)
      for (unsigned k = 0; k < n.request_count; ++k) out.push_back({next_block_id_++, n.tgcs});
    queued_.clear();
  } else if (!queued_.empty() && outstanding_.empty()) {
    auto& first = queued_.front();
    out.push_back({next_block_id_++, first.tgcs});
    if (--first.request_count == 0) queued_.erase(queued_.begin());
  }
  for (const auto& a : out) {
    outstanding_.emplace(a.block_id, a.tgcs);
    issued_at_us_.emplace(a.block_id, now_us);
  }
  return out;
}

std::vector<Assignment> BlockOrderer::close_window(std::uint64_t now_us) {
  window_open_ = false;
  return issue(now_us, !cfg_.sequential);
}

bool BlockOrderer::on_commit(std::uint64_t block_id, std::uint64_t now_us) {
  if (block_id <= watermark_) return false;
  committed_ahead_.emplace(block_id, now_us);
  while (!committed_ahead_.empty() && committed_ahead_.begin()->first == watermark_ + 1) {
    watermark_ = committed_ahead_.begin()->first;
    watermark_at_us_ = committed_ahead_.begin()->second;
    committed_ahead_.erase(committed_ahead_.begin());
    outstanding_.erase(watermark_);
    issued_at_us_.erase(watermark_);
  }
  return open_if_waiting(now_us);
}

bool BlockOrderer::open_if_waiting(std::uint64_t now_us) {
  if (!cfg_.sequential || window_open_ || !outstanding_.empty() || queued_.empty()) return false;
  window_open_ = true;
  window_close_at_ = now_us + cfg_.t_bis_us;
  return true;
}

std::uint64_t BlockOrderer::deadline_of_next() const {
  const std::uint64_t next = watermark_ + 1;
  auto it = issued_at_us_.find(next);
  const std::uint64_t since = it == issued_at_us_.end() ? watermark_at_us_ : std::max(watermark_at_us_, it->second);
  return since + cfg_.t_blk_us;
}

std::optional<std::uint64_t> BlockOrderer::overdue(std::uint64_t now_us) const {
  const std::uint64_t next = watermark_ + 1;
  if (!outstanding_.count(next)) return std::nullopt;
  if (now_us < deadline_of_next()) return std::nullopt;
  return next;
}

bool BlockOrderer::apply_void(std::uint64_t block_id, std::uint64_t now_us) {
  if (block_id <= watermark_ || !outstanding_.count(block_id)) return false;
  std::map<std::uint64_t, NodeId> out;
  std::map<std::uint64_t, std::uint64_t> issued;
  for (const auto& [id, tgcs] : outstanding_) {
    if (id == block_id) continue;
    out.emplace(renumber_after_void(id, block_id), tgcs);
  }
  for (const auto& [id, at] : issued_at_us_) {
    if (id == block_id) continue;
    issued.emplace(renumber_after_void(id, block_id), id > block_id ? std::max(at, now_us) : at);
  }
  outstanding_ = std::move(out);
  issued_at_us_ = std::move(issued);
  --next_block_id_;
  return true;
}

wire::OrderingSnapshot BlockOrderer::snapshot() const {
  wire::OrderingSnapshot s;
  s.next_block_id = next_block_id_;
  s.committed_watermark = watermark_;
  for (const auto& [id, tgcs] : outstanding_) s.outstanding.push_back({id, tgcs});
  s.queued = queued_;
  return s;
}

BlockOrderer BlockOrderer::restore(OrdererConfig cfg, const wire::OrderingSnapshot& s, std::uint64_t now_us) {
  BlockOrderer o(cfg, s.committed_watermark, now_us);
  o.next_block_id_ = s.next_block_id;
  for (const auto& a : s.outstanding) {
    o.outstanding_.emplace(a.block_id, a.tgcs);
    o.issued_at_us_.emplace(a.block_id, now_us);
  }
  o.queued_ = s.queued;
  if (!o.queued_.empty()) {
    o.window_open_ = true;
    o.window_close_at_ = now_us + cfg.t_bis_us;
  }
  return o;
}

}  // namespace proact::consensus

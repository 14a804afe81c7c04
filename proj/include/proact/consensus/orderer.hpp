#pragma once

// Block Orderer: collects NBRs for T_BIS, then hands out consecutive block
// ids ordered by NBR send timestamp (ties by TGCS id). Also tracks commits,
// voids overdue blocks, and in sequential mode keeps at most one id
// outstanding network-wide.

#include <map>
#include <optional>
#include <vector>

#include "proact/wire/messages.hpp"

namespace proact::consensus {

using wire::Assignment;
using wire::NbrMsg;
using wire::NodeId;

struct OrdererConfig {
  std::uint64_t t_bis_us = 50'000;
  std::uint64_t t_blk_us = 5'000'000;
  bool sequential = false;
};

/// Id a block holds after VOID(voided) is applied.
constexpr std::uint64_t renumber_after_void(std::uint64_t id, std::uint64_t voided) {
  return id > voided ? id - 1 : id;
}

class BlockOrderer {
 public:
  /// `committed_tip` is the last committed block id (0 after Genesis).
  BlockOrderer(OrdererConfig cfg, std::uint64_t committed_tip, std::uint64_t now_us = 0);

  /// Queues an NBR. Returns true if it opened a window; the caller then
  /// schedules close_window at window_close_at().
  bool on_nbr(const NbrMsg& nbr, std::uint64_t now_us);
  bool window_open() const { return window_open_; }
  std::uint64_t window_close_at() const { return window_close_at_; }

  /// Closes the window and issues ids. Parallel mode serves every queued
  /// request; sequential mode issues at most one id and only when nothing is
  /// outstanding.
  std::vector<Assignment> close_window(std::uint64_t now_us);

  /// Records a commit the BO observed. Returns true when it opened a window
  /// (see open_if_waiting); the caller then schedules close_window.
  bool on_commit(std::uint64_t block_id, std::uint64_t now_us);

  /// Sequential mode: once nothing is outstanding, queued requests get a
  /// fresh T_BIS window so that late NBRs with older timestamps can still
  /// win the next id. Returns true if a window was opened.
  bool open_if_waiting(std::uint64_t now_us);

  /// The next uncommitted id when it has waited T_blk since both its
  /// predecessor committed and it was issued.
  std::optional<std::uint64_t> overdue(std::uint64_t now_us) const;
  std::uint64_t deadline_of_next() const;

  /// Applies VOID(block_id): drops it and shifts every higher outstanding id
  /// down by one. Ignored (false) for committed or unknown ids.
  bool apply_void(std::uint64_t block_id, std::uint64_t now_us);

  std::uint64_t next_block_id() const { return next_block_id_; }
  std::uint64_t committed_watermark() const { return watermark_; }
  const std::map<std::uint64_t, NodeId>& outstanding() const { return outstanding_; }
  const std::vector<NbrMsg>& queued() const { return queued_; }
  const OrdererConfig& config() const { return cfg_; }

  wire::OrderingSnapshot snapshot() const;
  /// Incoming BO state; an open window of the outgoing BO is re-opened at
  /// `now_us` if requests are still queued.
  static BlockOrderer restore(OrdererConfig cfg, const wire::OrderingSnapshot& s, std::uint64_t now_us);

 private:
  std::vector<Assignment> issue(std::uint64_t now_us, bool all);

  OrdererConfig cfg_;
  std::uint64_t next_block_id_;
  std::uint64_t watermark_;
  std::uint64_t watermark_at_us_;
  std::map<std::uint64_t, NodeId> outstanding_;
  std::map<std::uint64_t, std::uint64_t> issued_at_us_;
  std::map<std::uint64_t, std::uint64_t> committed_ahead_;  // id -> commit time
  std::vector<NbrMsg> queued_;
  bool window_open_ = false;
  std::uint64_t window_close_at_ = 0;
};

}  // namespace proact::consensus

#pragma once

#include <cstddef>
#include <set>

#include "proact/wire/types.hpp"

namespace proact::consensus {

enum class CommitStatus : std::uint8_t { Pending, Committed, Rejected };

const char* to_string(CommitStatus);

constexpr std::size_t quorum_size(std::size_t n_tgcs) { return n_tgcs / 2 + 1; }

/// Committed iff acks reach floor(n/2)+1, Rejected iff errors do.
constexpr CommitStatus commit_check(std::size_t acks, std::size_t errors, std::size_t n_tgcs) {
  if (acks >= quorum_size(n_tgcs)) return CommitStatus::Committed;
  if (errors >= quorum_size(n_tgcs)) return CommitStatus::Rejected;
  return CommitStatus::Pending;
}

/// Votes for one block from distinct TGCSs; the first vote of a TGCS wins.
class VoteTally {
 public:
  bool add_ack(wire::NodeId tgcs) { return !errors_.count(tgcs) && acks_.insert(tgcs).second; }
  bool add_error(wire::NodeId tgcs) { return !acks_.count(tgcs) && errors_.insert(tgcs).second; }
  std::size_t acks() const { return acks_.size(); }
  std::size_t errors() const { return errors_.size(); }
  bool voted(wire::NodeId tgcs) const { return acks_.count(tgcs) || errors_.count(tgcs); }
  CommitStatus status(std::size_t n_tgcs) const { return commit_check(acks(), errors(), n_tgcs); }
  const std::set<wire::NodeId>& ack_set() const { return acks_; }
  const std::set<wire::NodeId>& error_set() const { return errors_; }

 private:
  std::set<wire::NodeId> acks_;
  std::set<wire::NodeId> errors_;
};

}  // namespace proact::consensus

#include "proact/consensus/quorum.hpp"

namespace proact::consensus {

const char* to_string(CommitStatus s) {
  switch (s) {
    case CommitStatus::Pending: return "pending";
    case CommitStatus::Committed: return "committed";
    case CommitStatus::Rejected: return "rejected";
  }
  return "?";
}

}  // namespace proact::consensus

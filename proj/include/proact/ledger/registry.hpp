#pragma once

// Registered identities and public keys as published in Genesis and later
// registration transactions. Validation only ever consults this view.

#include <optional>
#include <unordered_map>
#include <vector>

#include "proact/wire/types.hpp"

namespace proact::ledger {

using wire::Digest;
using wire::NodeId;

struct Registration {
  wire::NodeInfo info;
  Digest public_key{};
  bool tgcs = false;

  bool operator==(const Registration&) const = default;
};

class NodeRegistry {
 public:
  void add(const Registration& r) { nodes_.insert_or_assign(r.info.id, r); }
  bool known(NodeId id) const { return nodes_.count(id) != 0; }
  const Registration* find(NodeId id) const {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
  }
  std::optional<Digest> public_key(NodeId id) const {
    const auto* r = find(id);
    return r ? std::optional<Digest>(r->public_key) : std::nullopt;
  }
  std::size_t size() const { return nodes_.size(); }
  std::vector<NodeId> with_role(wire::Role role) const;

 private:
  std::unordered_map<NodeId, Registration> nodes_;
};

}  // namespace proact::ledger

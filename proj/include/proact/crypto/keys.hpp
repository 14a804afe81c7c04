#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "proact/crypto/suite.hpp"

namespace proact::crypto {

using wire::NodeId;

/// Key holder: a single node or a CA-issued group.
struct Holder {
  enum class Kind : std::uint8_t { Node, Group };
  Kind kind = Kind::Node;
  std::uint32_t id = 0;

  static Holder node(NodeId n) { return {Kind::Node, n.value}; }
  static Holder group(std::uint32_t g) { return {Kind::Group, g}; }
  auto operator<=>(const Holder&) const = default;
};

using PrivateSeed = std::array<std::uint8_t, 32>;

struct KeyPair {
  PrivateSeed private_seed{};
  Digest public_key{};
  Holder holder;

  static KeyPair from_seed(const PrivateSeed& seed, Holder holder);
  /// Deterministic key material from a run seed and the holder identity.
  static KeyPair derive(std::uint64_t master_seed, Holder holder);
};

/// Public keys and possession lists. A node's own key is openable by the
/// node and every CA; a group key by its members and every CA.
class KeyRegistry {
 public:
  void add_ca(NodeId ca) { cas_.insert(ca); }
  bool is_ca(NodeId n) const { return cas_.count(n) != 0; }

  void register_node(NodeId node, const KeyPair& kp);
  bool has_node(NodeId node) const { return nodes_.count(node) != 0; }
  std::optional<Digest> public_key(NodeId node) const;

  /// Issues a group key pair for `members`, granted to every member and the
  /// CAs. Reuses the existing group for an identical member set.
  const KeyPair& group_keygen(NodeId ca, const std::vector<NodeId>& members, std::uint64_t master_seed);
  std::optional<std::uint32_t> group_for(const std::vector<NodeId>& members) const;
  const std::vector<NodeId>& group_members(std::uint32_t group) const;
  std::optional<Digest> group_public_key(std::uint32_t group) const;

  /// Holder whose key a transaction with these owners is sealed to.
  std::optional<Holder> holder_for_owners(const std::vector<NodeId>& owners) const;
  std::optional<Digest> public_key(Holder h) const;

  bool can_open(NodeId caller, Holder h) const;

 private:
  std::set<NodeId> cas_;
  std::unordered_map<NodeId, KeyPair> nodes_;
  struct Group {
    KeyPair keys;
    std::vector<NodeId> members;  // sorted
  };
  std::vector<Group> groups_;  // group id = index + 1
  std::map<std::vector<NodeId>, std::uint32_t> group_index_;
};

}  // namespace proact::crypto

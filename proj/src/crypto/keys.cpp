#include "proact/crypto/keys.hpp"

#include <algorithm>

namespace proact::crypto {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

KeyPair KeyPair::from_seed(const PrivateSeed& seed, Holder holder) {
  KeyPair kp;
  kp.private_seed = seed;
  kp.public_key = spongent224(seed);
  kp.holder = holder;
  return kp;
}

KeyPair KeyPair::derive(std::uint64_t master_seed, Holder holder) {
  std::uint64_t x = master_seed ^ (static_cast<std::uint64_t>(holder.kind) << 56) ^
                    (static_cast<std::uint64_t>(holder.id) * 0xD1B54A32D192ED03ull);
  PrivateSeed seed{};
  for (std::size_t i = 0; i < seed.size(); i += 8) {
    const std::uint64_t v = splitmix64(x);
    for (std::size_t j = 0; j < 8; ++j) seed[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
  }
  return from_seed(seed, holder);
}

void KeyRegistry::register_node(NodeId node, const KeyPair& kp) { nodes_.insert_or_assign(node, kp); }

std::optional<Digest> KeyRegistry::public_key(NodeId node) const {
  auto it = nodes_.find(node);
  if (it == nodes_.end()) return std::nullopt;
  return it->second.public_key;
}

const KeyPair& KeyRegistry::group_keygen(NodeId ca, const std::vector<NodeId>& members, std::uint64_t master_seed) {
  if (members.empty()) throw CryptoError(CryptoErrc::InvalidArgument, "group needs at least one member");
  if (!is_ca(ca)) throw CryptoError(CryptoErrc::InvalidArgument, "group keys are issued by a CA");
  std::vector<NodeId> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (auto it = group_index_.find(sorted); it != group_index_.end()) return groups_[it->second - 1].keys;

  const auto id = static_cast<std::uint32_t>(groups_.size() + 1);
  groups_.push_back(Group{KeyPair::derive(master_seed, Holder::group(id)), sorted});
  group_index_.emplace(std::move(sorted), id);
  return groups_.back().keys;
}

std::optional<std::uint32_t> KeyRegistry::group_for(const std::vector<NodeId>& members) const {
  std::vector<NodeId> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto it = group_index_.find(sorted);
  if (it == group_index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<NodeId>& KeyRegistry::group_members(std::uint32_t group) const {
  if (group == 0 || group > groups_.size()) throw CryptoError(CryptoErrc::UnknownKey, "unknown group");
  return groups_[group - 1].members;
}

std::optional<Digest> KeyRegistry::group_public_key(std::uint32_t group) const {
  if (group == 0 || group > groups_.size()) return std::nullopt;
  return groups_[group - 1].keys.public_key;
}

std::optional<Holder> KeyRegistry::holder_for_owners(const std::vector<NodeId>& owners) const {
  if (owners.size() == 1) return Holder::node(owners.front());
  if (owners.size() >= 2) {
    if (auto g = group_for(owners)) return Holder::group(*g);
  }
  return std::nullopt;
}

std::optional<Digest> KeyRegistry::public_key(Holder h) const {
  return h.kind == Holder::Kind::Node ? public_key(NodeId{h.id}) : group_public_key(h.id);
}

bool KeyRegistry::can_open(NodeId caller, Holder h) const {
  if (is_ca(caller)) return true;
  if (h.kind == Holder::Kind::Node) return caller.value == h.id;
  if (h.id == 0 || h.id > groups_.size()) return false;
  const auto& m = groups_[h.id - 1].members;
  return std::binary_search(m.begin(), m.end(), caller);
}

}  // namespace proact::crypto

#include "proact/wire/merkle.hpp"

#include <stdexcept>

#include "proact/crypto/spongent.hpp"
#include "proact/wire/codec.hpp"

namespace proact::wire {

Digest tx_digest(const Transaction& tx) { return crypto::spongent224(encode_transaction(tx)); }

Digest merkle_root(std::span<const Digest> leaves) {
  if (leaves.empty()) throw std::invalid_argument("merkle_root of an empty list");
  std::vector<Digest> level(leaves.begin(), leaves.end());
  std::array<std::uint8_t, 2 * kDigestLen> pair{};
  while (level.size() > 1) {
    if (level.size() % 2 != 0) level.push_back(level.back());
    std::vector<Digest> next(level.size() / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      std::copy(level[2 * i].begin(), level[2 * i].end(), pair.begin());
      std::copy(level[2 * i + 1].begin(), level[2 * i + 1].end(), pair.begin() + kDigestLen);
      next[i] = crypto::spongent224(pair);
    }
    level = std::move(next);
  }
  return level.front();
}

Digest merkle_root_of(std::span<const Transaction> txs) {
  std::vector<Digest> leaves;
  leaves.reserve(txs.size());
  for (const auto& tx : txs) leaves.push_back(tx_digest(tx));
  return merkle_root(leaves);
}

Digest block_hash(ByteView header_bytes) { return crypto::spongent224(header_bytes); }

Digest block_hash(const BlockHeader& header) { return block_hash(encode_header(header)); }

}  // namespace proact::wire

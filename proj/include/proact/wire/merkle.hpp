#pragma once

#include <span>

#include "proact/wire/types.hpp"

namespace proact::wire {

/// SPONGENT-224 of the full transaction encoding, signature included.
Digest tx_digest(const Transaction& tx);

/// Binary tree with parent = SPONGENT-224(left || right); an odd level
/// duplicates its last node; a single leaf is its own root. Throws
/// std::invalid_argument on an empty list.
Digest merkle_root(std::span<const Digest> leaves);
Digest merkle_root_of(std::span<const Transaction> txs);

/// Hash of the encoded header only; the body is committed via merkle_root.
Digest block_hash(ByteView header_bytes);
Digest block_hash(const BlockHeader& header);

}  // namespace proact::wire

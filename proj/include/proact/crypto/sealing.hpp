#pragma once

// Hash-based stand-ins for signing and public-key sealing. Sizes follow the
// suite tier; confidentiality is enforced through KeyRegistry possession.

#include <array>

#include "proact/crypto/keys.hpp"
#include "proact/crypto/suite.hpp"
#include "proact/wire/types.hpp"

namespace proact::crypto {

using Nonce = std::array<std::uint8_t, CryptoSuite::kSealNonceLen>;

/// First signature_len bytes of SPONGENT-224(pub || digest), continued with
/// SPONGENT-224(pub || digest || k) for k = 1, 2, ... when longer than 28.
Bytes sign(const CryptoSuite& suite, const Digest& creator_public, ByteView digest);
bool verify(const CryptoSuite& suite, const Digest& creator_public, ByteView digest, ByteView signature);

/// nonce || ciphertext || tag.
Bytes seal(const CryptoSuite& suite, const Digest& recipient_public, const Nonce& nonce, ByteView plaintext);

/// Opens with the recipient key directly; throws Tampered on tag mismatch.
Bytes open_with_key(const CryptoSuite& suite, const Digest& recipient_public, ByteView sealed);

/// Opens on behalf of `caller`, who must hold possession of `recipient`.
Bytes open(const CryptoSuite& suite, const KeyRegistry& registry, NodeId caller, Holder recipient, ByteView sealed);

/// Digest a transaction's creator signs: its suite hash over signing_bytes.
Bytes signing_digest(const wire::Transaction& tx);

/// Suite a transaction claims through its security class.
const CryptoSuite& suite_of(const wire::Transaction& tx);

/// Fills enc_id/hash_id/enc_par/hash_par from the suite, then signs.
void sign_transaction(wire::Transaction& tx, const KeyPair& creator);
bool verify_transaction(const wire::Transaction& tx, const Digest& creator_public);

}  // namespace proact::crypto

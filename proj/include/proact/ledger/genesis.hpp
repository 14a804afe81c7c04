#pragma once

// Genesis block (id 0) and registration transactions. A registration
// payload is "REG1" role(1) id(4) public_key(28) tgcs(1)
// owner_real_id_len(2)+owner_real_id.

#include <optional>

#include "proact/crypto/keys.hpp"
#include "proact/ledger/registry.hpp"
#include "proact/wire/types.hpp"

namespace proact::ledger {

wire::Bytes encode_registration(const Registration& r);
std::optional<Registration> decode_registration(wire::ByteView payload);

/// Public S1 BlockT2 transaction carrying one registration, signed by the
/// registering CA.
wire::Transaction registration_tx(const Registration& r, const crypto::KeyPair& ca, std::uint64_t tx_seq,
                                  std::uint64_t at_us);

/// Block 0: one registration transaction per node, CAs first so the
/// signer's key is always known before its signatures are checked.
wire::Block make_genesis(const std::vector<Registration>& nodes, const crypto::KeyPair& ca_keys, NodeId ca,
                         std::uint64_t at_us);

/// Adds the registrations a block carries. Outside of bootstrap (Genesis)
/// only registrations created by an already registered CA are accepted.
void import_registrations(const wire::Block& block, NodeRegistry& registry, bool bootstrap = false);

}  // namespace proact::ledger

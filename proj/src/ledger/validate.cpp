#include "proact/ledger/validate.hpp"

#include <unordered_set>

#include "proact/crypto/sealing.hpp"
#include "proact/wire/codec.hpp"
#include "proact/wire/merkle.hpp"

namespace proact::ledger {

namespace {

bool access_enc_consistent(const wire::Transaction& tx) {
  const bool pub = tx.access_class == wire::AccessClass::Public;
  if (pub != (tx.enc_id == 0)) return false;
  if (pub != tx.enc_par.empty()) return false;
  if (!wire::owner_count_matches(tx.access_class, tx.owners.size())) return false;
  if (!pub) {
    const auto& suite = crypto::suite_of(tx);
    if (tx.enc_id != suite.suite_id || tx.enc_par != suite.enc_par()) return false;
  }
  return true;
}

}  // namespace

const char* to_string(BlockErrc c) {
  switch (c) {
    case BlockErrc::BlockId: return "block_id";
    case BlockErrc::PrevHash: return "prev_hash";
    case BlockErrc::MerkleRoot: return "merkle_root";
    case BlockErrc::UnknownCreator: return "unknown_creator";
    case BlockErrc::Signature: return "signature";
    case BlockErrc::TaMismatch: return "ta_mismatch";
    case BlockErrc::AccessEnc: return "access_enc";
    case BlockErrc::BlockType: return "block_type";
    case BlockErrc::DuplicateTx: return "duplicate_tx";
    case BlockErrc::Empty: return "empty";
  }
  return "?";
}

wire::Bytes ValidationResult::tx_bitmap(std::size_t tx_count) const {
  wire::Bytes bm((tx_count + 7) / 8, 0);
  for (const auto& i : issues)
    if (i.tx_index >= 0 && static_cast<std::size_t>(i.tx_index) < tx_count)
      bm[static_cast<std::size_t>(i.tx_index) / 8] |= static_cast<std::uint8_t>(1u << (i.tx_index % 8));
  return bm;
}

bool ValidationResult::has(BlockErrc c) const {
  for (const auto& i : issues)
    if (i.code == c) return true;
  return false;
}

std::vector<BlockErrc> validate_transaction(const wire::Transaction& tx, const NodeRegistry& registry) {
  std::vector<BlockErrc> out;
  const auto pub = registry.public_key(tx.creator);
  if (!pub) {
    out.push_back(BlockErrc::UnknownCreator);
  } else if (!crypto::verify_transaction(tx, *pub)) {
    out.push_back(BlockErrc::Signature);
  }
  if (!access_enc_consistent(tx)) out.push_back(BlockErrc::AccessEnc);
  return out;
}

ValidationResult validate_block(std::uint64_t expected_id, const wire::Digest& tip_digest, const wire::Block& block,
                                const NodeRegistry& registry, const OnChainFn& on_chain) {
  ValidationResult res;
  const auto& h = block.header;
  const auto& txs = block.transactions;
  auto add = [&](BlockErrc c, int i = -1) { res.issues.push_back({c, i}); };

  if (h.block_id != expected_id) add(BlockErrc::BlockId);
  if (h.prev_hash != tip_digest) add(BlockErrc::PrevHash);
  if (txs.empty()) {
    add(BlockErrc::Empty);
    return res;
  }
  if (wire::merkle_root_of(txs) != h.merkle_root) add(BlockErrc::MerkleRoot);

  for (std::size_t i = 0; i < txs.size(); ++i) {
    const auto pub = registry.public_key(txs[i].creator);
    if (!pub)
      add(BlockErrc::UnknownCreator, static_cast<int>(i));
    else if (!crypto::verify_transaction(txs[i], *pub))
      add(BlockErrc::Signature, static_cast<int>(i));
  }

  if (h.ta_list.size() != txs.size()) {
    add(BlockErrc::TaMismatch);
  } else {
    for (std::size_t i = 0; i < txs.size(); ++i)
      if (h.ta_list[i] != wire::ta_entry_for(txs[i], static_cast<std::uint16_t>(i)))
        add(BlockErrc::TaMismatch, static_cast<int>(i));
  }

  for (std::size_t i = 0; i < txs.size(); ++i)
    if (!access_enc_consistent(txs[i])) add(BlockErrc::AccessEnc, static_cast<int>(i));

  for (std::size_t i = 0; i < txs.size(); ++i)
    if (txs[i].block_target != h.block_type) add(BlockErrc::BlockType, static_cast<int>(i));

  std::unordered_set<wire::TxKey> seen;
  for (std::size_t i = 0; i < txs.size(); ++i) {
    const auto k = wire::key_of(txs[i]);
    if (!seen.insert(k).second || (on_chain && on_chain(k))) add(BlockErrc::DuplicateTx, static_cast<int>(i));
  }
  return res;
}

}  // namespace proact::ledger

#include "proact/ledger/full_ledger.hpp"

#include <fstream>
#include <iterator>

#include "proact/ledger/genesis.hpp"
#include "proact/wire/codec.hpp"
#include "proact/wire/merkle.hpp"

namespace proact::ledger {

const char* to_string(LedgerErrc c) {
  switch (c) {
    case LedgerErrc::Gap: return "gap";
    case LedgerErrc::Duplicate: return "duplicate";
    case LedgerErrc::ChainBreak: return "chain_break";
    case LedgerErrc::Invalid: return "invalid";
    case LedgerErrc::BlockTooLarge: return "block_too_large";
    case LedgerErrc::NotForThisDrone: return "not_for_this_drone";
    case LedgerErrc::NotFound: return "not_found";
    case LedgerErrc::Io: return "io";
  }
  return "?";
}

std::uint64_t FullLedger::tip_id() const {
  if (blocks_.empty()) throw LedgerError(LedgerErrc::NotFound, "empty ledger has no tip");
  return blocks_.size() - 1;
}

void FullLedger::append(BlockPtr block) {
  const std::uint64_t id = block->header.block_id;
  if (id < next_id()) throw LedgerError(LedgerErrc::Duplicate, "block " + std::to_string(id) + " already on chain");
  if (id > next_id())
    throw LedgerError(LedgerErrc::Gap, "block " + std::to_string(id) + " leaves a gap after " +
                                           std::to_string(static_cast<long long>(next_id()) - 1));
  if (!blocks_.empty() && block->header.prev_hash != tip_digest_)
    throw LedgerError(LedgerErrc::ChainBreak, "block " + std::to_string(id) + " does not link to the tip");
  for (std::size_t i = 0; i < block->transactions.size(); ++i) index_.emplace(wire::key_of(block->transactions[i]), TxLocation{id, i});
  tip_digest_ = wire::block_hash(block->header);
  digests_.push_back(tip_digest_);
  blocks_.push_back(std::move(block));
}

std::optional<TxLocation> FullLedger::find(const wire::TxKey& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const wire::Transaction* FullLedger::transaction(const wire::TxKey& k) const {
  auto loc = find(k);
  if (!loc) return nullptr;
  return &blocks_[loc->block_id]->transactions[loc->index];
}

bool FullLedger::verify_chain() const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i]->header.block_id != i) return false;
    if (wire::block_hash(blocks_[i]->header) != digests_[i]) return false;
    if (i > 0 && blocks_[i]->header.prev_hash != digests_[i - 1]) return false;
  }
  return true;
}

void FullLedger::export_to(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LedgerError(LedgerErrc::Io, "cannot write " + path.string());
  for (const auto& b : blocks_) {
    const wire::Bytes enc = wire::encode_block(*b);
    out.write(reinterpret_cast<const char*>(enc.data()), static_cast<std::streamsize>(enc.size()));
  }
  if (!out) throw LedgerError(LedgerErrc::Io, "short write to " + path.string());
}

FullLedger FullLedger::import_from(const std::filesystem::path& path, NodeRegistry* registry_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LedgerError(LedgerErrc::Io, "cannot read " + path.string());
  const wire::Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  FullLedger ledger;
  NodeRegistry registry;
  wire::ByteReader reader(data);
  while (reader.remaining() > 0) {
    wire::Block block;
    try {
      block = wire::decode_block_prefix(reader);
    } catch (const wire::WireError& e) {
      throw LedgerError(LedgerErrc::Invalid, "block " + std::to_string(ledger.next_id()) + ": " + e.what());
    }
    const std::uint64_t id = ledger.next_id();
    if (id == 0) {
      // Genesis registers its own signer; every registration must be signed
      // by a registered CA.
      import_registrations(block, registry, true);
      for (const auto& tx : block.transactions) {
        const auto* signer = registry.find(tx.creator);
        if (!signer || signer->info.role != wire::Role::CA)
          throw LedgerError(LedgerErrc::Invalid, "genesis transaction not signed by a registered CA");
      }
    }
    const auto res = validate_block(id, ledger.empty() ? wire::Digest{} : ledger.tip_digest(), block, registry,
                                    [&](const wire::TxKey& k) { return ledger.contains(k); });
    if (!res.ok())
      throw LedgerError(LedgerErrc::Invalid, "block " + std::to_string(id) + ": " + to_string(res.first()));
    if (id != 0) import_registrations(block, registry);
    ledger.append(block);
  }
  if (registry_out) *registry_out = std::move(registry);
  return ledger;
}

}  // namespace proact::ledger

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "proact/ledger/registry.hpp"
#include "proact/ledger/validate.hpp"
#include "proact/wire/types.hpp"

namespace proact::ledger {

enum class LedgerErrc {
  Gap,
  Duplicate,
  ChainBreak,
  Invalid,
  BlockTooLarge,
  NotForThisDrone,
  NotFound,
  Io,
};

const char* to_string(LedgerErrc);

class LedgerError : public std::runtime_error {
 public:
  LedgerError(LedgerErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  LedgerErrc code() const noexcept { return code_; }

 private:
  LedgerErrc code_;
};

using BlockPtr = std::shared_ptr<const wire::Block>;

struct TxLocation {
  std::uint64_t block_id = 0;
  std::size_t index = 0;
};

/// Complete chain held by a GCS. Blocks are shared immutable values so many
/// ledgers can hold the same committed block.
class FullLedger {
 public:
  FullLedger() = default;

  /// Appends the successor of the tip (or block 0 on an empty ledger).
  /// Throws Gap / Duplicate on a wrong id and ChainBreak on a prev_hash
  /// that does not match the tip.
  void append(BlockPtr block);
  void append(const wire::Block& block) { append(std::make_shared<const wire::Block>(block)); }

  bool empty() const { return blocks_.empty(); }
  std::size_t size() const { return blocks_.size(); }
  /// Id the next block must carry.
  std::uint64_t next_id() const { return blocks_.size(); }
  std::uint64_t tip_id() const;
  const wire::Digest& tip_digest() const { return tip_digest_; }

  const wire::Block& block(std::uint64_t id) const { return *blocks_.at(id); }
  const BlockPtr& block_ptr(std::uint64_t id) const { return blocks_.at(id); }
  const wire::Digest& block_digest(std::uint64_t id) const { return digests_.at(id); }

  bool contains(const wire::TxKey& k) const { return index_.count(k) != 0; }
  std::optional<TxLocation> find(const wire::TxKey& k) const;
  const wire::Transaction* transaction(const wire::TxKey& k) const;

  /// Recomputes every prev_hash link.
  bool verify_chain() const;

  /// Concatenated canonical block encodings.
  void export_to(const std::filesystem::path& path) const;
  /// Reads an export, rebuilds the registry from registration transactions,
  /// and validates every block; throws LedgerError(Invalid) naming the
  /// first failing block.
  static FullLedger import_from(const std::filesystem::path& path, NodeRegistry* registry_out = nullptr);

 private:
  std::vector<BlockPtr> blocks_;
  std::vector<wire::Digest> digests_;
  wire::Digest tip_digest_{};
  std::unordered_map<wire::TxKey, TxLocation> index_;
};

}  // namespace proact::ledger

#pragma once

// Locating a transaction a drone needs: its own partial ledger first, then
// an in-range neighbour that owns and holds it, then its GCS.

#include <functional>
#include <span>

#include "proact/ledger/drone_ledger.hpp"

namespace proact::ledger {

enum class FetchSource : std::uint8_t { Local, Neighbor, Gcs };

const char* to_string(FetchSource);

struct NeighborView {
  NodeId id;
  const DroneLedger* ledger = nullptr;
};

struct FetchResult {
  wire::Transaction tx;
  FetchSource source = FetchSource::Local;
  NodeId served_by;
};

/// Called once per remote exchange with (source, peer, request bytes,
/// response bytes) so the caller can account network time and energy.
using FetchCostFn = std::function<void(FetchSource, NodeId, std::size_t, std::size_t)>;

inline constexpr std::size_t kFetchRequestBytes = 4 + 4 + 8 + 8 + 1 + 16;

/// Throws LedgerError(NotFound) if no source holds the transaction.
FetchResult fetch_transaction(const DroneLedger& self, std::span<const NeighborView> in_range, const FullLedger* gcs,
                              NodeId gcs_id, const wire::TxKey& key, const FetchCostFn& cost = {});

}  // namespace proact::ledger

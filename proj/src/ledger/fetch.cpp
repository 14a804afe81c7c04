#include "proact/ledger/fetch.hpp"

#include <algorithm>

#include "proact/wire/codec.hpp"

namespace proact::ledger {

const char* to_string(FetchSource s) {
  switch (s) {
    case FetchSource::Local: return "local";
    case FetchSource::Neighbor: return "neighbor";
    case FetchSource::Gcs: return "gcs";
  }
  return "?";
}

FetchResult fetch_transaction(const DroneLedger& self, std::span<const NeighborView> in_range, const FullLedger* gcs,
                              NodeId gcs_id, const wire::TxKey& key, const FetchCostFn& cost) {
  if (const auto* tx = self.find(key)) return {*tx, FetchSource::Local, self.owner()};

  for (const auto& n : in_range) {
    if (!n.ledger) continue;
    const auto* tx = n.ledger->find(key);
    if (!tx || std::find(tx->owners.begin(), tx->owners.end(), n.id) == tx->owners.end()) continue;
    if (cost) cost(FetchSource::Neighbor, n.id, kFetchRequestBytes, wire::encoded_size(*tx));
    return {*tx, FetchSource::Neighbor, n.id};
  }

  if (gcs) {
    if (const auto* tx = gcs->transaction(key)) {
      if (cost) cost(FetchSource::Gcs, gcs_id, kFetchRequestBytes, wire::encoded_size(*tx));
      return {*tx, FetchSource::Gcs, gcs_id};
    }
  }
  throw LedgerError(LedgerErrc::NotFound, "transaction unknown network-wide");
}

}  // namespace proact::ledger

#pragma once

// Access control over transactions listed in a block's TA list.

#include <optional>

#include "proact/crypto/keys.hpp"
#include "proact/ledger/registry.hpp"
#include "proact/wire/types.hpp"

namespace proact::ledger {

/// Signed request by `requester` for transaction (creator, tx_seq).
struct AccessRequest {
  NodeId requester;
  wire::TxKey target;
  std::uint64_t at_us = 0;
  wire::Bytes signature;
};

wire::Bytes access_request_bytes(const AccessRequest& r);
/// Signed with the S2_C1 suite over the request fields.
void sign_access_request(AccessRequest& r, const crypto::KeyPair& requester);
inline constexpr std::size_t kAccessRequestWireBytes = 4 + 4 + 8 + 8 + 1 + 16;

enum class IncidentKind : std::uint8_t { UnauthorizedAccess = 1, Forgery = 2, FalseData = 3 };

/// Draft of a T4 security-incident transaction; the reporting agent turns
/// it into a sealed transaction to its GCS.
struct IncidentDraft {
  NodeId reporter;
  NodeId offender;
  IncidentKind kind = IncidentKind::UnauthorizedAccess;
  wire::TxKey target;
  std::uint64_t at_us = 0;

  /// 1 KB report body.
  wire::Bytes report_body() const;
};

inline constexpr std::size_t kIncidentReportBytes = 1024;

enum class Verdict : std::uint8_t { Allow, Deny };

struct AccessDecision {
  Verdict verdict = Verdict::Deny;
  std::optional<IncidentDraft> incident;
};

/// Allow iff the entry is Public, the requester owns it, or the requester is
/// a CA; the request signature is verified first. Deny always carries an
/// incident draft naming the requester.
AccessDecision check_access(NodeId reporter, const AccessRequest& request, const wire::TaEntry& entry,
                            const NodeRegistry& registry);

}  // namespace proact::ledger

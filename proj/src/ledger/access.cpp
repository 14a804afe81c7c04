#include "proact/ledger/access.hpp"

#include <algorithm>

#include "proact/crypto/sealing.hpp"
#include "proact/wire/codec.hpp"

namespace proact::ledger {

namespace {
const crypto::CryptoSuite& request_suite() { return crypto::suite_for(wire::SecurityClass::S2_C1); }
}  // namespace

wire::Bytes access_request_bytes(const AccessRequest& r) {
  wire::Bytes out;
  wire::ByteWriter w(out);
  w.u32(r.requester.value);
  w.u32(r.target.creator.value);
  w.u64(r.target.tx_seq);
  w.u64(r.at_us);
  return out;
}

void sign_access_request(AccessRequest& r, const crypto::KeyPair& requester) {
  const auto& suite = request_suite();
  r.signature = crypto::sign(suite, requester.public_key, crypto::spongent(suite.hash_variant, access_request_bytes(r)));
}

wire::Bytes IncidentDraft::report_body() const {
  wire::Bytes out;
  wire::ByteWriter w(out);
  w.u8(static_cast<std::uint8_t>(kind));
  w.u32(reporter.value);
  w.u32(offender.value);
  w.u32(target.creator.value);
  w.u64(target.tx_seq);
  w.u64(at_us);
  out.resize(kIncidentReportBytes, 0);
  return out;
}

AccessDecision check_access(NodeId reporter, const AccessRequest& request, const wire::TaEntry& entry,
                            const NodeRegistry& registry) {
  AccessDecision d;
  const auto deny = [&](IncidentKind kind) {
    d.verdict = Verdict::Deny;
    d.incident = IncidentDraft{reporter, request.requester, kind, request.target, request.at_us};
    return d;
  };

  const auto pub = registry.public_key(request.requester);
  const auto& suite = request_suite();
  if (!pub || !crypto::verify(suite, *pub, crypto::spongent(suite.hash_variant, access_request_bytes(request)),
                              request.signature))
    return deny(IncidentKind::Forgery);

  const auto* reg = registry.find(request.requester);
  const bool allowed = entry.access_class == wire::AccessClass::Public ||
                       std::find(entry.owners.begin(), entry.owners.end(), request.requester) != entry.owners.end() ||
                       reg->info.role == wire::Role::CA;
  if (!allowed) return deny(IncidentKind::UnauthorizedAccess);
  d.verdict = Verdict::Allow;
  return d;
}

}  // namespace proact::ledger

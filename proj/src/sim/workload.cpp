#include "proact/sim/workload.hpp"

#include <cmath>
#include <stdexcept>

#include "proact/wire/codec.hpp"

namespace proact::sim {

const char* to_string(TxKind k) {
  switch (k) {
    case TxKind::T1: return "T1";
    case TxKind::T2: return "T2";
    case TxKind::T3: return "T3";
    case TxKind::T4: return "T4";
    case TxKind::T5: return "T5";
  }
  return "?";
}

TxClass classify(TxKind kind) {
  using wire::AccessClass;
  using wire::BlockType;
  using crypto::SecurityLevel;
  switch (kind) {
    case TxKind::T1: return {AccessClass::Single, SecurityLevel::Temporary, BlockType::BlockT1};
    case TxKind::T2: return {AccessClass::Group, SecurityLevel::Temporary, BlockType::BlockT1};
    case TxKind::T3: return {AccessClass::Public, SecurityLevel::Permanent, BlockType::BlockT2};
    case TxKind::T4: return {AccessClass::Single, SecurityLevel::Temporary, BlockType::BlockT1};
    case TxKind::T5: return {AccessClass::Single, SecurityLevel::Permanent, BlockType::BlockT2};
  }
  throw std::invalid_argument("unknown transaction kind");
}

const crypto::CryptoSuite& suite_for_kind(TxKind kind, double mission_s, bool tiering) {
  if (!tiering) return crypto::suite_for(wire::SecurityClass::S1);
  return crypto::select_suite(classify(kind).level, mission_s);
}

wire::Bytes command_payload(std::size_t n, std::uint64_t tag) {
  wire::Bytes b(n);
  std::uint64_t x = tag * 0x9E3779B97F4A7C15ull + 1;
  for (std::size_t i = 0; i < n; ++i) {
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    b[i] = static_cast<std::uint8_t>(x);
  }
  return b;
}

wire::Transaction build_transaction(const TxSpec& spec, const crypto::KeyPair& creator,
                                    const wire::Digest* recipient_public, std::mt19937_64& rng) {
  if (!spec.suite) throw std::invalid_argument("transaction spec without a suite");
  const TxClass cls = classify(spec.kind);
  wire::Transaction tx;
  tx.creator = spec.creator;
  tx.tx_seq = spec.tx_seq;
  tx.created_at_us = spec.at_us;
  tx.topic = spec.kind == TxKind::T1 ? 1 : spec.kind == TxKind::T2 ? 2 : 0;
  tx.access_class = cls.access;
  tx.owners = spec.owners;
  tx.security_class = spec.suite->security_class;
  tx.block_target = cls.target;
  if (cls.access == wire::AccessClass::Public) {
    tx.payload = spec.plaintext;
  } else {
    if (!recipient_public) throw std::invalid_argument("sealed transaction without a recipient key");
    crypto::Nonce nonce{};
    const std::uint64_t n = rng();
    for (std::size_t i = 0; i < nonce.size(); ++i) nonce[i] = static_cast<std::uint8_t>(n >> (8 * i));
    tx.payload = crypto::seal(*spec.suite, *recipient_public, nonce, spec.plaintext);
  }
  crypto::sign_transaction(tx, creator);
  return tx;
}

namespace {

std::int32_t to_dm(double m) { return static_cast<std::int32_t>(std::lround(m * 10)); }
double from_dm(std::uint32_t v) { return static_cast<std::int32_t>(v) / 10.0; }

}  // namespace

wire::Bytes encode_report(const DataReport& r) {
  wire::Bytes out;
  wire::ByteWriter w(out);
  w.raw(std::string_view("T3R1"));
  w.u32(static_cast<std::uint32_t>(to_dm(r.pos.x)));
  w.u32(static_cast<std::uint32_t>(to_dm(r.pos.y)));
  w.u64(r.at_us);
  w.u8(static_cast<std::uint8_t>(r.observed.size()));
  for (const auto& c : r.observed) {
    w.u32(c.site);
    w.u32(static_cast<std::uint32_t>(to_dm(c.pos.x)));
    w.u32(static_cast<std::uint32_t>(to_dm(c.pos.y)));
  }
  w.u32(r.attachment_bytes);
  w.u64(r.attachment_tag);
  return out;
}

std::optional<DataReport> decode_report(wire::ByteView payload) {
  try {
    wire::ByteReader rd(payload);
    const auto magic = rd.raw(4);
    if (std::string(magic.begin(), magic.end()) != "T3R1") return std::nullopt;
    DataReport r;
    r.pos.x = from_dm(rd.u32());
    r.pos.y = from_dm(rd.u32());
    r.at_us = rd.u64();
    const std::size_t n = rd.u8();
    for (std::size_t i = 0; i < n; ++i) {
      SiteClaim c;
      c.site = rd.u32();
      c.pos.x = from_dm(rd.u32());
      c.pos.y = from_dm(rd.u32());
      r.observed.push_back(c);
    }
    r.attachment_bytes = rd.u32();
    r.attachment_tag = rd.u64();
    if (rd.remaining() != 0) return std::nullopt;
    return r;
  } catch (const wire::WireError&) {
    return std::nullopt;
  }
}

std::size_t carried_size(const wire::Transaction& tx, std::size_t attachment_bytes) {
  return wire::encoded_size(tx) + attachment_bytes;
}

}  // namespace proact::sim

#include "proact/wire/codec.hpp"

#include <limits>

namespace proact::wire {

const char* to_string(WireErrc e) {
  switch (e) {
    case WireErrc::Truncated: return "truncated";
    case WireErrc::Inconsistent: return "inconsistent";
    case WireErrc::Overrun: return "overrun";
    case WireErrc::TrailingBytes: return "trailing_bytes";
    case WireErrc::EmptyPayload: return "empty_payload";
    case WireErrc::TaMismatch: return "ta_mismatch";
    case WireErrc::BadEnum: return "bad_enum";
    case WireErrc::FieldTooLong: return "field_too_long";
  }
  return "unknown";
}

const char* to_string(AccessClass a) {
  switch (a) {
    case AccessClass::Public: return "public";
    case AccessClass::Single: return "single";
    case AccessClass::Group: return "group";
  }
  return "?";
}

const char* to_string(SecurityClass s) {
  switch (s) {
    case SecurityClass::S1: return "S1";
    case SecurityClass::S2_C1: return "S2_C1";
    case SecurityClass::S2_C2: return "S2_C2";
  }
  return "?";
}

const char* to_string(BlockType b) {
  switch (b) {
    case BlockType::BlockT1: return "BlockT1";
    case BlockType::BlockT2: return "BlockT2";
  }
  return "?";
}

const char* to_string(Role r) {
  switch (r) {
    case Role::CA: return "CA";
    case Role::GCS: return "GCS";
    case Role::TGCS: return "TGCS";
    case Role::UAV: return "UAV";
    case Role::BO: return "BO";
  }
  return "?";
}

TaEntry ta_entry_for(const Transaction& tx, std::uint16_t index) {
  return TaEntry{index, tx.access_class, tx.owners};
}

namespace {

AccessClass access_from(std::uint8_t v) {
  if (v < 1 || v > 3) throw WireError(WireErrc::BadEnum, "access_class out of range");
  return static_cast<AccessClass>(v);
}

SecurityClass security_from(std::uint8_t v) {
  if (v < 1 || v > 3) throw WireError(WireErrc::BadEnum, "security_class out of range");
  return static_cast<SecurityClass>(v);
}

BlockType block_type_from(std::uint8_t v) {
  if (v < 1 || v > 2) throw WireError(WireErrc::BadEnum, "block type out of range");
  return static_cast<BlockType>(v);
}

void check_encodable(const Transaction& tx) {
  if (!owner_count_matches(tx.access_class, tx.owners.size()))
    throw WireError(WireErrc::Inconsistent, "owner count inconsistent with access class");
  if (tx.payload.empty()) throw WireError(WireErrc::EmptyPayload, "payload is empty");
  if (tx.owners.size() > std::numeric_limits<std::uint16_t>::max() ||
      tx.enc_par.size() > std::numeric_limits<std::uint16_t>::max() ||
      tx.hash_par.size() > std::numeric_limits<std::uint16_t>::max() ||
      tx.payload.size() > std::numeric_limits<std::uint32_t>::max() ||
      tx.signature.size() > std::numeric_limits<std::uint8_t>::max())
    throw WireError(WireErrc::FieldTooLong, "field exceeds its length prefix");
}

void write_fields_before_signature(ByteWriter& w, const Transaction& tx) {
  w.u32(tx.creator.value);
  w.u64(tx.tx_seq);
  w.u64(tx.created_at_us);
  w.u32(tx.topic);
  w.u8(static_cast<std::uint8_t>(tx.access_class));
  w.u16(static_cast<std::uint16_t>(tx.owners.size()));
  for (const auto& o : tx.owners) w.u32(o.value);
  w.u8(static_cast<std::uint8_t>(tx.security_class));
  w.u8(static_cast<std::uint8_t>(tx.block_target));
  w.u8(tx.enc_id);
  w.u8(tx.hash_id);
  w.u16(static_cast<std::uint16_t>(tx.enc_par.size()));
  w.raw(tx.enc_par);
  w.u16(static_cast<std::uint16_t>(tx.hash_par.size()));
  w.raw(tx.hash_par);
  w.u32(static_cast<std::uint32_t>(tx.payload.size()));
  w.raw(tx.payload);
}

Transaction read_transaction(ByteReader& r) {
  Transaction tx;
  tx.creator = NodeId{r.u32()};
  tx.tx_seq = r.u64();
  tx.created_at_us = r.u64();
  tx.topic = r.u32();
  tx.access_class = access_from(r.u8());
  const std::uint16_t owner_count = r.u16();
  if (!owner_count_matches(tx.access_class, owner_count))
    throw WireError(WireErrc::Inconsistent, "owner_count inconsistent with access_class");
  tx.owners.reserve(owner_count);
  for (std::uint16_t i = 0; i < owner_count; ++i) tx.owners.push_back(NodeId{r.u32()});
  tx.security_class = security_from(r.u8());
  tx.block_target = block_type_from(r.u8());
  tx.enc_id = r.u8();
  tx.hash_id = r.u8();
  auto enc_par = r.raw(r.u16());
  tx.enc_par.assign(enc_par.begin(), enc_par.end());
  auto hash_par = r.raw(r.u16());
  tx.hash_par.assign(hash_par.begin(), hash_par.end());
  auto payload = r.raw(r.u32());
  if (payload.empty()) throw WireError(WireErrc::EmptyPayload, "payload is empty");
  tx.payload.assign(payload.begin(), payload.end());
  auto sig = r.raw(r.u8());
  tx.signature.assign(sig.begin(), sig.end());
  return tx;
}

void write_ta_entry(ByteWriter& w, const TaEntry& e) {
  w.u16(e.tx_index);
  w.u8(static_cast<std::uint8_t>(e.access_class));
  w.u16(static_cast<std::uint16_t>(e.owners.size()));
  for (const auto& o : e.owners) w.u32(o.value);
}

}  // namespace

Bytes signing_bytes(const Transaction& tx) {
  check_encodable(tx);
  Bytes out;
  out.reserve(encoded_size(tx));
  ByteWriter w(out);
  write_fields_before_signature(w, tx);
  return out;
}

Bytes encode_transaction(const Transaction& tx) {
  check_encodable(tx);
  Bytes out;
  out.reserve(encoded_size(tx));
  ByteWriter w(out);
  write_fields_before_signature(w, tx);
  w.u8(static_cast<std::uint8_t>(tx.signature.size()));
  w.raw(tx.signature);
  return out;
}

Transaction decode_transaction(ByteView bytes) {
  ByteReader r(bytes);
  Transaction tx = read_transaction(r);
  if (r.remaining() != 0) throw WireError(WireErrc::TrailingBytes, "trailing bytes after signature");
  return tx;
}

std::size_t encoded_size(const Transaction& tx) {
  return kTxFixedBytes + 4 * tx.owners.size() + 2 + tx.enc_par.size() + 2 + tx.hash_par.size() + 4 +
         tx.payload.size() + 1 + tx.signature.size();
}

std::vector<TaEntry> build_ta_list(std::span<const Transaction> txs) {
  std::vector<TaEntry> ta;
  ta.reserve(txs.size());
  for (std::size_t i = 0; i < txs.size(); ++i) ta.push_back(ta_entry_for(txs[i], static_cast<std::uint16_t>(i)));
  return ta;
}

Bytes encode_header(const BlockHeader& h) {
  if (h.ta_list.size() > std::numeric_limits<std::uint16_t>::max())
    throw WireError(WireErrc::FieldTooLong, "too many TA entries");
  Bytes out;
  out.reserve(encoded_size(h));
  ByteWriter w(out);
  w.u8(h.version);
  w.u64(h.block_id);
  w.u8(static_cast<std::uint8_t>(h.block_type));
  w.u32(h.miner.value);
  w.u64(h.timestamp_us);
  w.raw(h.prev_hash);
  w.raw(h.merkle_root);
  w.u16(static_cast<std::uint16_t>(h.ta_list.size()));
  for (const auto& e : h.ta_list) write_ta_entry(w, e);
  return out;
}

BlockHeader decode_header(ByteReader& r) {
  BlockHeader h;
  h.version = r.u8();
  h.block_id = r.u64();
  h.block_type = block_type_from(r.u8());
  h.miner = NodeId{r.u32()};
  h.timestamp_us = r.u64();
  auto prev = r.raw(kDigestLen);
  std::memcpy(h.prev_hash.data(), prev.data(), kDigestLen);
  auto root = r.raw(kDigestLen);
  std::memcpy(h.merkle_root.data(), root.data(), kDigestLen);
  const std::uint16_t count = r.u16();
  h.ta_list.reserve(count);
  for (std::uint16_t i = 0; i < count; ++i) {
    TaEntry e;
    e.tx_index = r.u16();
    e.access_class = access_from(r.u8());
    const std::uint16_t n = r.u16();
    if (!owner_count_matches(e.access_class, n))
      throw WireError(WireErrc::Inconsistent, "TA owner_count inconsistent with access_class");
    e.owners.reserve(n);
    for (std::uint16_t k = 0; k < n; ++k) e.owners.push_back(NodeId{r.u32()});
    h.ta_list.push_back(std::move(e));
  }
  return h;
}

std::size_t encoded_size(const BlockHeader& h) {
  std::size_t n = kHeaderFixedBytes;
  for (const auto& e : h.ta_list) n += 5 + 4 * e.owners.size();
  return n;
}

std::size_t encoded_size(const Block& b) {
  std::size_t n = encoded_size(b.header);
  for (const auto& tx : b.transactions) n += encoded_size(tx);
  return n;
}

Bytes encode_block(const Block& b) {
  if (b.header.ta_list.size() != b.transactions.size())
    throw WireError(WireErrc::TaMismatch, "TA list and transaction count differ");
  Bytes out = encode_header(b.header);
  out.reserve(encoded_size(b));
  for (const auto& tx : b.transactions) {
    Bytes t = encode_transaction(tx);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

Block decode_block_prefix(ByteReader& r) {
  Block b;
  b.header = decode_header(r);
  b.transactions.reserve(b.header.ta_list.size());
  for (std::size_t i = 0; i < b.header.ta_list.size(); ++i) b.transactions.push_back(read_transaction(r));
  return b;
}

Block decode_block(ByteView bytes) {
  ByteReader r(bytes);
  Block b = decode_block_prefix(r);
  if (r.remaining() != 0) throw WireError(WireErrc::TrailingBytes, "trailing bytes after block");
  return b;
}

}  // namespace proact::wire

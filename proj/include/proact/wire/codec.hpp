#pragma once

// Canonical little-endian encodings of transactions, headers and blocks.
//
// Transaction layout:
//   creator(4) tx_seq(8) created_at_us(8) topic(4) access_class(1)
//   owner_count(2) owners(4*n) security_class(1) block_target(1) enc_id(1)
//   hash_id(1) enc_par_len(2)+enc_par hash_par_len(2)+hash_par
//   payload_len(4)+payload sig_len(1)+signature
//
// Header layout:
//   version(1) block_id(8) block_type(1) miner(4) timestamp_us(8)
//   prev_hash(28) merkle_root(28) tx_count(2) then tx_count TA entries of
//   tx_index(2) access_class(1) owner_count(2) owners(4*n)

#include <cstring>
#include <stdexcept>
#include <string>
#include <string_view>

#include "proact/wire/types.hpp"

namespace proact::wire {

enum class WireErrc {
  Truncated,
  Inconsistent,
  Overrun,
  TrailingBytes,
  EmptyPayload,
  TaMismatch,
  BadEnum,
  FieldTooLong,
};

const char* to_string(WireErrc);

class WireError : public std::runtime_error {
 public:
  WireError(WireErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  WireErrc code() const noexcept { return code_; }

 private:
  WireErrc code_;
};

inline constexpr std::size_t kTxFixedBytes = 31;
inline constexpr std::size_t kHeaderFixedBytes = 80;

class ByteWriter {
 public:
  explicit ByteWriter(Bytes& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { le(v); }
  void u32(std::uint32_t v) { le(v); }
  void u64(std::uint64_t v) { le(v); }
  void raw(ByteView v) { out_.insert(out_.end(), v.begin(), v.end()); }
  void raw(std::string_view v) { out_.insert(out_.end(), v.begin(), v.end()); }

 private:
  template <typename T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  Bytes& out_;
};

class ByteReader {
 public:
  explicit ByteReader(ByteView in) : in_(in) {}

  std::uint8_t u8() { return le<std::uint8_t>(); }
  std::uint16_t u16() { return le<std::uint16_t>(); }
  std::uint32_t u32() { return le<std::uint32_t>(); }
  std::uint64_t u64() { return le<std::uint64_t>(); }

  ByteView raw(std::size_t n) {
    if (remaining() < n) throw WireError(WireErrc::Overrun, "declared length overruns buffer");
    auto v = in_.subspan(pos_, n);
    pos_ += n;
    return v;
  }

  std::size_t remaining() const noexcept { return in_.size() - pos_; }
  std::size_t position() const noexcept { return pos_; }

 private:
  template <typename T>
  T le() {
    if (remaining() < sizeof(T)) throw WireError(WireErrc::Truncated, "truncated input");
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(in_[pos_ + i]) << (8 * i));
    pos_ += sizeof(T);
    return v;
  }
  ByteView in_;
  std::size_t pos_ = 0;
};

Bytes encode_transaction(const Transaction& tx);
Transaction decode_transaction(ByteView bytes);

/// Every encoded field preceding sig_len; the input of the signing digest.
Bytes signing_bytes(const Transaction& tx);

/// Encoded size computed from field widths without encoding.
std::size_t encoded_size(const Transaction& tx);

Bytes encode_header(const BlockHeader& header);
BlockHeader decode_header(ByteReader& reader);

Bytes encode_block(const Block& block);
Block decode_block(ByteView bytes);

/// Decodes one block from the front of a stream of concatenated blocks.
Block decode_block_prefix(ByteReader& reader);

std::size_t encoded_size(const BlockHeader& header);
std::size_t encoded_size(const Block& block);

/// Builds the TA list from the block's transactions.
std::vector<TaEntry> build_ta_list(std::span<const Transaction> txs);

}  // namespace proact::wire

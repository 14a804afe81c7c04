#pragma once

// Consensus protocol messages. Every encoding starts with a one-byte kind.

#include <variant>
#include <vector>

#include "proact/wire/codec.hpp"

namespace proact::wire {

enum class MsgKind : std::uint8_t {
  Nbr = 1,
  Assign = 2,
  BlockMsg = 3,
  BlockAck = 4,
  BlockError = 5,
  Void = 6,
  BoHandoff = 7,
};

struct NbrMsg {
  NodeId tgcs;
  std::uint64_t timestamp_us = 0;
  std::uint8_t request_count = 1;
  bool operator==(const NbrMsg&) const = default;
};

struct Assignment {
  std::uint64_t block_id = 0;
  NodeId tgcs;
  bool operator==(const Assignment&) const = default;
};

struct AssignMsg {
  std::vector<Assignment> assignments;
  bool operator==(const AssignMsg&) const = default;
};

struct BlockMsg {
  Block block;
  bool operator==(const BlockMsg&) const = default;
};

struct BlockAckMsg {
  std::uint64_t block_id = 0;
  NodeId tgcs;
  bool operator==(const BlockAckMsg&) const = default;
};

/// error_code is the first failed validation check; tx_bitmap has bit i set
/// when transaction i failed (LSB-first within each byte).
struct BlockErrorMsg {
  std::uint64_t block_id = 0;
  NodeId tgcs;
  std::uint8_t error_code = 0;
  Bytes tx_bitmap;
  bool operator==(const BlockErrorMsg&) const = default;
};

struct VoidMsg {
  std::uint64_t block_id = 0;
  bool operator==(const VoidMsg&) const = default;
};

/// Orderer state handed from the outgoing to the incoming BO.
struct OrderingSnapshot {
  std::uint64_t next_block_id = 0;
  std::uint64_t committed_watermark = 0;
  std::vector<Assignment> outstanding;
  std::vector<NbrMsg> queued;
  bool operator==(const OrderingSnapshot&) const = default;
};

struct BoHandoffMsg {
  NodeId from;
  NodeId to;
  OrderingSnapshot state;
  bool operator==(const BoHandoffMsg&) const = default;
};

using Message = std::variant<NbrMsg, AssignMsg, BlockMsg, BlockAckMsg, BlockErrorMsg, VoidMsg, BoHandoffMsg>;

MsgKind kind_of(const Message& m);
const char* to_string(MsgKind k);

Bytes encode_message(const Message& m);
Message decode_message(ByteView bytes);
std::size_t encoded_size(const Message& m);

}  // namespace proact::wire

#include "proact/wire/messages.hpp"

namespace proact::wire {

namespace {

void write_assignments(ByteWriter& w, const std::vector<Assignment>& as) {
  if (as.size() > 0xFFFF) throw WireError(WireErrc::FieldTooLong, "too many assignments");
  w.u16(static_cast<std::uint16_t>(as.size()));
  for (const auto& a : as) {
    w.u64(a.block_id);
    w.u32(a.tgcs.value);
  }
}

std::vector<Assignment> read_assignments(ByteReader& r) {
  const std::size_t n = r.u16();
  std::vector<Assignment> as(n);
  for (auto& a : as) {
    a.block_id = r.u64();
    a.tgcs = NodeId{r.u32()};
  }
  return as;
}

void write_nbr(ByteWriter& w, const NbrMsg& m) {
  w.u32(m.tgcs.value);
  w.u64(m.timestamp_us);
  w.u8(m.request_count);
}

NbrMsg read_nbr(ByteReader& r) {
  NbrMsg m;
  m.tgcs = NodeId{r.u32()};
  m.timestamp_us = r.u64();
  m.request_count = r.u8();
  return m;
}

struct Encoder {
  ByteWriter& w;
  void operator()(const NbrMsg& m) const { write_nbr(w, m); }
  void operator()(const AssignMsg& m) const { write_assignments(w, m.assignments); }
  void operator()(const BlockMsg& m) const { w.raw(encode_block(m.block)); }
  void operator()(const BlockAckMsg& m) const {
    w.u64(m.block_id);
    w.u32(m.tgcs.value);
  }
  void operator()(const BlockErrorMsg& m) const {
    w.u64(m.block_id);
    w.u32(m.tgcs.value);
    w.u8(m.error_code);
    if (m.tx_bitmap.size() > 0xFFFF) throw WireError(WireErrc::FieldTooLong, "bitmap too long");
    w.u16(static_cast<std::uint16_t>(m.tx_bitmap.size()));
    w.raw(m.tx_bitmap);
  }
  void operator()(const VoidMsg& m) const { w.u64(m.block_id); }
  void operator()(const BoHandoffMsg& m) const {
    w.u32(m.from.value);
    w.u32(m.to.value);
    w.u64(m.state.next_block_id);
    w.u64(m.state.committed_watermark);
    write_assignments(w, m.state.outstanding);
    if (m.state.queued.size() > 0xFFFF) throw WireError(WireErrc::FieldTooLong, "too many queued NBRs");
    w.u16(static_cast<std::uint16_t>(m.state.queued.size()));
    for (const auto& n : m.state.queued) write_nbr(w, n);
  }
};

}  // namespace

MsgKind kind_of(const Message& m) { return static_cast<MsgKind>(m.index() + 1); }

const char* to_string(MsgKind k) {
  switch (k) {
    case MsgKind::Nbr: return "NBR";
    case MsgKind::Assign: return "ASSIGN";
    case MsgKind::BlockMsg: return "BLOCK";
    case MsgKind::BlockAck: return "BLOCK_ACK";
    case MsgKind::BlockError: return "BLOCK_ERROR";
    case MsgKind::Void: return "VOID";
    case MsgKind::BoHandoff: return "BO_HANDOFF";
  }
  return "?";
}

Bytes encode_message(const Message& m) {
  Bytes out;
  ByteWriter w(out);
  w.u8(static_cast<std::uint8_t>(kind_of(m)));
  std::visit(Encoder{w}, m);
  return out;
}

Message decode_message(ByteView bytes) {
  ByteReader r(bytes);
  const auto kind = r.u8();
  Message m;
  switch (static_cast<MsgKind>(kind)) {
    case MsgKind::Nbr: m = read_nbr(r); break;
    case MsgKind::Assign: m = AssignMsg{read_assignments(r)}; break;
    case MsgKind::BlockMsg: m = BlockMsg{decode_block_prefix(r)}; break;
    case MsgKind::BlockAck: {
      BlockAckMsg a;
      a.block_id = r.u64();
      a.tgcs = NodeId{r.u32()};
      m = a;
      break;
    }
    case MsgKind::BlockError: {
      BlockErrorMsg e;
      e.block_id = r.u64();
      e.tgcs = NodeId{r.u32()};
      e.error_code = r.u8();
      const std::size_t n = r.u16();
      const auto bm = r.raw(n);
      e.tx_bitmap.assign(bm.begin(), bm.end());
      m = e;
      break;
    }
    case MsgKind::Void: m = VoidMsg{r.u64()}; break;
    case MsgKind::BoHandoff: {
      BoHandoffMsg h;
      h.from = NodeId{r.u32()};
      h.to = NodeId{r.u32()};
      h.state.next_block_id = r.u64();
      h.state.committed_watermark = r.u64();
      h.state.outstanding = read_assignments(r);
      const std::size_t n = r.u16();
      for (std::size_t i = 0; i < n; ++i) h.state.queued.push_back(read_nbr(r));
      m = h;
      break;
    }
    default: throw WireError(WireErrc::BadEnum, "unknown message kind");
  }
  if (r.remaining() != 0) throw WireError(WireErrc::TrailingBytes, "trailing bytes after message");
  return m;
}

std::size_t encoded_size(const Message& m) {
  struct Sizer {
    std::size_t operator()(const NbrMsg&) const { return 13; }
    std::size_t operator()(const AssignMsg& a) const { return 2 + 12 * a.assignments.size(); }
    std::size_t operator()(const BlockMsg& b) const { return encoded_size(b.block); }
    std::size_t operator()(const BlockAckMsg&) const { return 12; }
    std::size_t operator()(const BlockErrorMsg& e) const { return 15 + e.tx_bitmap.size(); }
    std::size_t operator()(const VoidMsg&) const { return 8; }
    std::size_t operator()(const BoHandoffMsg& h) const {
      return 8 + 16 + 2 + 12 * h.state.outstanding.size() + 2 + 13 * h.state.queued.size();
    }
  };
  return 1 + std::visit(Sizer{}, m);
}

}  // namespace proact::wire

#include "proact/wire/dump.hpp"

#include <sstream>

#include "proact/crypto/spongent.hpp"

namespace proact::wire {

namespace {

std::string owners_str(const std::vector<NodeId>& owners) {
  std::string s;
  for (std::size_t i = 0; i < owners.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(owners[i].value);
  }
  return s;
}

void dump_tx(std::ostream& os, const Transaction& tx, const std::string& prefix) {
  os << prefix << "creator=" << tx.creator.value << '\n'
     << prefix << "tx_seq=" << tx.tx_seq << '\n'
     << prefix << "created_at_us=" << tx.created_at_us << '\n'
     << prefix << "topic=" << tx.topic << '\n'
     << prefix << "access_class=" << to_string(tx.access_class) << '\n'
     << prefix << "owners=" << owners_str(tx.owners) << '\n'
     << prefix << "security_class=" << to_string(tx.security_class) << '\n'
     << prefix << "block_target=" << to_string(tx.block_target) << '\n'
     << prefix << "enc_id=" << unsigned(tx.enc_id) << '\n'
     << prefix << "hash_id=" << unsigned(tx.hash_id) << '\n'
     << prefix << "enc_par=" << tx.enc_par << '\n'
     << prefix << "hash_par=" << tx.hash_par << '\n'
     << prefix << "payload_len=" << tx.payload.size() << '\n'
     << prefix << "signature=" << crypto::to_hex(tx.signature) << '\n';
}

void dump_header(std::ostream& os, const BlockHeader& h) {
  os << "version=" << unsigned(h.version) << '\n'
     << "block_id=" << h.block_id << '\n'
     << "block_type=" << to_string(h.block_type) << '\n'
     << "miner=" << h.miner.value << '\n'
     << "timestamp_us=" << h.timestamp_us << '\n'
     << "prev_hash=" << crypto::to_hex(h.prev_hash) << '\n'
     << "merkle_root=" << crypto::to_hex(h.merkle_root) << '\n'
     << "tx_count=" << h.ta_list.size() << '\n';
  for (const auto& e : h.ta_list)
    os << "ta." << e.tx_index << "=" << to_string(e.access_class) << ":" << owners_str(e.owners) << '\n';
}

}  // namespace

std::string dump(const Transaction& tx) {
  std::ostringstream os;
  dump_tx(os, tx, "");
  return os.str();
}

std::string dump(const BlockHeader& header) {
  std::ostringstream os;
  dump_header(os, header);
  return os.str();
}

std::string dump(const Block& block) {
  std::ostringstream os;
  dump_header(os, block.header);
  for (std::size_t i = 0; i < block.transactions.size(); ++i)
    dump_tx(os, block.transactions[i], "tx." + std::to_string(i) + ".");
  return os.str();
}

}  // namespace proact::wire

// Built-in checks a fresh build must pass: pinned SPONGENT digests, wire
// round trips with their byte counts, the ordering and quorum examples, and
// the BTO arithmetic on the two fixture transactions.

#include <cmath>
#include <cstdio>

#include "proact/cli/commands.hpp"
#include "proact/consensus/orderer.hpp"
#include "proact/consensus/quorum.hpp"
#include "proact/crypto/kernels.hpp"
#include "proact/crypto/keys.hpp"
#include "proact/crypto/sealing.hpp"
#include "proact/crypto/spongent.hpp"
#include "proact/sim/metrics.hpp"
#include "proact/wire/codec.hpp"
#include "proact/wire/merkle.hpp"
#include "proact/wire/messages.hpp"

namespace proact::cli {

namespace {

using crypto::HashVariant;
using wire::Bytes;
using wire::NodeId;

struct Vector {
  HashVariant variant;
  const char* label;
  const char* hex;
};

// Digests from the independent Python oracle (tests/oracle/spongent_oracle.py).
const Vector kVectors[] = {
    {HashVariant::Spongent88, "empty", "a0c6c93510fe871f385a7f"},
    {HashVariant::Spongent88, "abc", "5ca730cf89c71c35f79fa3"},
    {HashVariant::Spongent88, "pattern1000", "fe925e51d94a31b7f8bdfe"},
    {HashVariant::Spongent88, "published", "69971bf96def95bfc46822"},
    {HashVariant::Spongent224, "empty", "a5ca8fb1f4aca3e25f77420c8c4f0f9961d1485d24dcf8fd95758f33"},
    {HashVariant::Spongent224, "abc", "4d7bf9f6750cd79c46aa377e24fcee2607aa856cba98657cfcef5811"},
    {HashVariant::Spongent224, "pattern1000", "e7f11d4765120bf0ec3cd77728796c67589e77f0a1c40dc34ab6606f"},
    {HashVariant::Spongent224, "published", "8443b12d2eee4e09969a183205f5f7f684a711a5be079a15f4ccdc30"},
};

Bytes pattern(std::size_t n) {
  Bytes b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>(i);
  return b;
}

Bytes message(const std::string& label) {
  if (label == "empty") return {};
  if (label == "abc") return Bytes{'a', 'b', 'c'};
  if (label == "pattern1000") return pattern(1000);
  const std::string s = "Sponge + Present = Spongent";
  return Bytes(s.begin(), s.end());
}

const char* variant_name(HashVariant v) { return v == HashVariant::Spongent88 ? "spongent-88" : "spongent-224"; }

crypto::KeyPair key(std::uint32_t id) { return crypto::KeyPair::derive(7, crypto::Holder::node(NodeId{id})); }

// 100 B command sealed for one drone under S2_C1.
wire::Transaction command_fixture() {
  wire::Transaction tx;
  tx.creator = NodeId{10};
  tx.tx_seq = 1;
  tx.created_at_us = 1'000'000;
  tx.access_class = wire::AccessClass::Single;
  tx.owners = {NodeId{100}};
  tx.security_class = wire::SecurityClass::S2_C1;
  tx.block_target = wire::BlockType::BlockT1;
  const auto& suite = crypto::suite_for(tx.security_class);
  tx.payload = crypto::seal(suite, key(100).public_key, crypto::Nonce{1, 2, 3, 4, 5, 6, 7, 8}, pattern(100));
  crypto::sign_transaction(tx, key(10));
  return tx;
}

// 10 KB public report under S1.
wire::Transaction report_fixture() {
  wire::Transaction tx;
  tx.creator = NodeId{100};
  tx.tx_seq = 1;
  tx.created_at_us = 2'000'000;
  tx.access_class = wire::AccessClass::Public;
  tx.security_class = wire::SecurityClass::S1;
  tx.block_target = wire::BlockType::BlockT2;
  tx.payload = pattern(10240);
  crypto::sign_transaction(tx, key(100));
  return tx;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestFaults& faults) {
  std::vector<SelftestCheck> out;
  auto check = [&out](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };

  auto sbox = crypto::kernels::kSbox;
  if (faults.corrupt_sbox) std::swap(sbox[0], sbox[1]);
  for (const auto& v : kVectors) {
    const std::string got = crypto::to_hex(crypto::spongent_with_sbox(v.variant, message(v.label), sbox));
    check(std::string(variant_name(v.variant)) + " " + v.label, got == v.hex, got);
  }
  // The dispatched kernel must agree with the table-driven reference.
  if (!faults.corrupt_sbox) {
    bool ok = true;
    for (const auto& v : kVectors) ok = ok && crypto::to_hex(crypto::spongent(v.variant, message(v.label))) == v.hex;
    check("kernel " + std::string(crypto::kernels::name(crypto::kernels::active())), ok);
  }

  try {
    const auto cmd = command_fixture();
    const auto rep = report_fixture();
    const Bytes ce = wire::encode_transaction(cmd);
    const Bytes re = wire::encode_transaction(rep);
    check("command encodes to 199 bytes", ce.size() == 199, std::to_string(ce.size()));
    check("report encodes to 10354 bytes", re.size() == 10354, std::to_string(re.size()));
    check("transaction round trip", wire::decode_transaction(ce) == cmd && wire::decode_transaction(re) == rep);

    wire::Block b;
    b.header.block_id = 1;
    b.header.block_type = wire::BlockType::BlockT1;
    b.header.miner = NodeId{10};
    b.transactions = {cmd, command_fixture()};
    b.transactions[1].tx_seq = 2;
    crypto::sign_transaction(b.transactions[1], key(10));
    b.header.ta_list = wire::build_ta_list(b.transactions);
    b.header.merkle_root = wire::merkle_root_of(b.transactions);
    check("block round trip", wire::decode_block(wire::encode_block(b)) == b);

    const wire::Message nbr = wire::NbrMsg{NodeId{2}, 123'456, 2};
    check("message round trip", wire::decode_message(wire::encode_message(nbr)) == nbr);

    const double bto_cmd = sim::byte_overhead(ce.size(), 100);
    const double bto_rep = sim::byte_overhead(re.size(), 10240);
    check("BTO of the command is 0.99", std::abs(bto_cmd - 0.99) < 1e-12, num(bto_cmd));
    check("BTO of the report is 114/10240", std::abs(bto_rep - 114.0 / 10240.0) < 1e-12, num(bto_rep));
  } catch (const std::exception& e) {
    check("wire fixtures", false, e.what());
  }

  {
    consensus::BlockOrderer bo({}, 43);
    const NodeId t1{1}, t2{2}, t3{3};
    bo.on_nbr({t2, 2000, 1}, 10'000);
    bo.on_nbr({t1, 1000, 1}, 10'500);
    bo.on_nbr({t3, 3000, 1}, 11'000);
    const auto a = bo.close_window(bo.window_close_at());
    const bool ok = a.size() == 3 && a[0] == wire::Assignment{44, t1} && a[1] == wire::Assignment{45, t2} &&
                    a[2] == wire::Assignment{46, t3};
    check("ordering example assigns 44/45/46", ok);
  }

  {
    consensus::VoteTally tally;
    for (std::uint32_t i = 0; i < 25; ++i) tally.add_ack(NodeId{i});
    const bool short_at_25 = tally.status(50) == consensus::CommitStatus::Pending;
    tally.add_ack(NodeId{25});
    const bool commits_at_26 = tally.status(50) == consensus::CommitStatus::Committed;
    check("quorum of 50 is 26", consensus::quorum_size(50) == 26 && short_at_25 && commits_at_26);
  }
  return out;
}

int cmd_selftest(const SelftestFaults& faults, std::ostream& out) {
  const auto checks = run_selftest(faults);
  std::size_t failed = 0;
  for (const auto& c : checks) {
    out << (c.ok ? "pass  " : "FAIL  ") << c.name;
    if (!c.ok && !c.detail.empty()) out << " (got " << c.detail << ")";
    out << "\n";
    failed += !c.ok;
  }
  out << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitSelftest;
}

int cmd_selftest_vectors(std::ostream& out) {
  for (const auto& v : kVectors)
    out << variant_name(v.variant) << " " << v.label << " "
        << crypto::to_hex(crypto::spongent(v.variant, message(v.label))) << "\n";
  return kExitOk;
}

}  // namespace proact::cli

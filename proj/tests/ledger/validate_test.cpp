#include "doctest.h"
#include "ledger/ledger_fixture.hpp"
#include "proact/ledger/validate.hpp"

using namespace proact;
using namespace proact::ledger;
using wire::NodeId;

namespace {

ValidationResult validate(fixtures::SmallNetwork& net, const wire::Block& b) {
  return validate_block(net.chain.next_id(), net.chain.tip_digest(), b, net.registry,
                        [&](const wire::TxKey& k) { return net.chain.contains(k); });
}

}  // namespace

TEST_CASE("well-formed successor validates") {
  fixtures::SmallNetwork net;
  const auto b = net.successor({fixtures::command_to(100, 1), fixtures::command_to(101, 2)});
  CHECK(validate(net, b).ok());
}

TEST_CASE("stale prev_hash is rejected") {
  fixtures::SmallNetwork net;
  for (std::uint64_t i = 1; i <= 43; ++i) net.chain.append(net.successor({fixtures::command_to(100, i)}));
  REQUIRE(net.chain.tip_id() == 43);
  // Built on block 42 while the tip is 43.
  const auto stale = fixtures::make_block(44, net.chain.block_digest(42), {fixtures::command_to(101, 100)});
  const auto r = validate(net, stale);
  CHECK_FALSE(r.ok());
  CHECK(r.first() == BlockErrc::PrevHash);
}

TEST_CASE("each check reports a named error") {
  fixtures::SmallNetwork net;
  const auto good = net.successor({fixtures::command_to(100, 1)});

  SUBCASE("block id") {
    auto b = good;
    b.header.block_id = 5;
    CHECK(validate(net, b).first() == BlockErrc::BlockId);
  }
  SUBCASE("merkle root") {
    auto b = good;
    b.header.merkle_root[0] ^= 1;
    CHECK(validate(net, b).first() == BlockErrc::MerkleRoot);
  }
  SUBCASE("unknown creator") {
    auto tx = fixtures::command_to(100, 1);
    tx.creator = NodeId{999};
    crypto::sign_transaction(tx, fixtures::key(999));
    const auto b = net.successor({tx});
    CHECK(validate(net, b).has(BlockErrc::UnknownCreator));
  }
  SUBCASE("forged creator") {
    auto tx = fixtures::command_to(100, 1);
    crypto::sign_transaction(tx, fixtures::key(104));  // drone signs as GCS 10
    const auto b = net.successor({tx});
    CHECK(validate(net, b).has(BlockErrc::Signature));
  }
  SUBCASE("TA mismatch") {
    auto b = good;
    b.header.ta_list[0].owners = {NodeId{101}};
    const auto r = validate(net, b);
    CHECK(r.first() == BlockErrc::TaMismatch);
    CHECK(r.tx_bitmap(1) == wire::Bytes{0x01});
  }
  SUBCASE("access/enc consistency") {
    auto tx = fixtures::command_to(100, 1);
    tx.enc_id = 0;
    tx.enc_par.clear();
    tx.signature = crypto::sign(crypto::suite_of(tx), fixtures::key(10).public_key, crypto::signing_digest(tx));
    CHECK(validate(net, net.successor({tx})).has(BlockErrc::AccessEnc));
  }
  SUBCASE("block type homogeneity") {
    const auto b = net.successor({fixtures::command_to(100, 1)}, wire::BlockType::BlockT2);
    CHECK(validate(net, b).has(BlockErrc::BlockType));
  }
  SUBCASE("duplicate transaction") {
    net.chain.append(good);
    const auto again = net.successor({fixtures::command_to(100, 1)});
    CHECK(validate(net, again).has(BlockErrc::DuplicateTx));
    const auto twice = net.successor({fixtures::command_to(100, 7), fixtures::command_to(100, 7)});
    CHECK(validate(net, twice).has(BlockErrc::DuplicateTx));
  }
}

TEST_CASE("registrations outside genesis need a CA signer") {
  fixtures::SmallNetwork net;
  ledger::Registration r{{NodeId{200}, wire::Role::UAV, "owner-b"}, fixtures::key(200).public_key, false};
  wire::Block by_gcs;
  by_gcs.transactions.push_back(ledger::registration_tx(r, fixtures::key(10), 0, 0));
  ledger::import_registrations(by_gcs, net.registry);
  CHECK_FALSE(net.registry.known(NodeId{200}));
  wire::Block by_ca;
  by_ca.transactions.push_back(ledger::registration_tx(r, fixtures::key(1), 50, 0));
  ledger::import_registrations(by_ca, net.registry);
  CHECK(net.registry.known(NodeId{200}));
  CHECK(net.registry.find(NodeId{200})->info.owner_real_id == "owner-b");
}

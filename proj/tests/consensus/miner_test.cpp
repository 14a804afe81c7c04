#include "doctest.h"
#include "ledger/ledger_fixture.hpp"
#include "proact/consensus/miner.hpp"

using namespace proact;
using namespace proact::consensus;

namespace {

wire::Transaction report(std::uint32_t drone, std::uint64_t seq) {
  wire::Transaction tx;
  tx.creator = NodeId{drone};
  tx.tx_seq = seq;
  tx.access_class = wire::AccessClass::Public;
  tx.security_class = wire::SecurityClass::S1;
  tx.block_target = wire::BlockType::BlockT2;
  tx.payload = fixtures::pattern(64);
  crypto::sign_transaction(tx, fixtures::key(drone));
  return tx;
}

}  // namespace

TEST_CASE("assembly partitions by block target") {
  fixtures::SmallNetwork net;
  Miner m(NodeId{10});
  std::vector<wire::Transaction> txs = {fixtures::command_to(100, 1), fixtures::command_to(101, 2),
                                        fixtures::command_to(102, 3), report(100, 1), report(101, 1)};
  const auto r = m.assemble(txs, net.registry, {}, 7000);
  CHECK(r.blocks == 2);
  REQUIRE(r.nbr);
  CHECK(r.nbr->request_count == 2);
  CHECK(r.nbr->timestamp_us == 7000);
  CHECK(m.pending()[0].block.transactions.size() == 3);
  CHECK(m.pending()[0].block.header.block_type == wire::BlockType::BlockT1);
  CHECK(m.pending()[1].block.transactions.size() == 2);
}

TEST_CASE("invalid transactions are rejected, single valid tx still makes a block") {
  fixtures::SmallNetwork net;
  Miner m(NodeId{10});
  auto bad = fixtures::command_to(100, 1);
  crypto::sign_transaction(bad, fixtures::key(103));
  const auto none = m.assemble({bad}, net.registry, {}, 0);
  CHECK(none.blocks == 0);
  CHECK_FALSE(none.nbr);
  REQUIRE(none.rejected.size() == 1);
  CHECK(none.rejected[0].reasons.front() == ledger::BlockErrc::Signature);

  const auto one = m.assemble({fixtures::command_to(100, 2)}, net.registry, {}, 0);
  CHECK(one.blocks == 1);
  CHECK(m.pending().back().block.transactions.size() == 1);
}

TEST_CASE("pipeline: finalize after predecessor commit, void reverts") {
  fixtures::SmallNetwork net;
  Miner a(NodeId{10}), b(NodeId{11});
  a.assemble({fixtures::command_to(100, 1)}, net.registry, {}, 0);
  b.assemble({fixtures::command_to(101, 2)}, net.registry, {}, 0);
  b.assemble({fixtures::command_to(102, 3)}, net.registry, {}, 0);
  const wire::AssignMsg assign{{{1, NodeId{10}}, {2, NodeId{11}}, {3, NodeId{11}}}};
  a.on_assign(assign);
  b.on_assign(assign);
  CHECK(b.find(2)->state == PendingState::AwaitingPredecessor);

  CHECK_FALSE(b.try_finalize(0, net.chain.tip_digest()));  // 2 waits for 1
  const auto blk1 = a.try_finalize(0, net.chain.tip_digest());
  REQUIRE(blk1);
  CHECK(blk1->header.prev_hash == net.chain.tip_digest());
  net.chain.append(*blk1);
  a.on_commit(1);
  CHECK(a.in_flight() == 0);

  const auto blk2 = b.try_finalize(1, net.chain.tip_digest());
  REQUIRE(blk2);
  CHECK(blk2->header.block_id == 2);
  CHECK_FALSE(b.try_finalize(1, net.chain.tip_digest()));  // already broadcast

  // Block 2 times out: it goes back to AwaitingId, block 3 becomes 2.
  const auto nbr = b.on_void(2, 9000);
  REQUIRE(nbr);
  CHECK(nbr->request_count == 1);
  CHECK(b.find(2) != nullptr);
  CHECK(b.find(2)->block.transactions.front().tx_seq == 3);
  CHECK(b.find(3) == nullptr);
  const auto blk2b = b.try_finalize(1, net.chain.tip_digest());
  REQUIRE(blk2b);
  CHECK(blk2b->transactions.front().tx_seq == 3);
}

TEST_CASE("rejected block returns unflagged transactions") {
  fixtures::SmallNetwork net;
  Miner m(NodeId{10});
  m.assemble({fixtures::command_to(100, 1), fixtures::command_to(101, 2), fixtures::command_to(102, 3)}, net.registry,
             {}, 0);
  m.on_assign({{{1, NodeId{10}}}});
  m.try_finalize(0, net.chain.tip_digest());
  const auto keep = m.on_rejected(1, wire::Bytes{0x02});
  REQUIRE(keep.size() == 2);
  CHECK(keep[0].tx_seq == 1);
  CHECK(keep[1].tx_seq == 3);
  CHECK(m.in_flight() == 0);
  CHECK_FALSE(m.on_void(1, 0));
}

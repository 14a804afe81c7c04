#include "doctest.h"
#include "ledger/ledger_fixture.hpp"
#include "proact/ledger/drone_ledger.hpp"
#include "proact/ledger/fetch.hpp"
#include "proact/wire/codec.hpp"

using namespace proact;
using namespace proact::ledger;
using wire::NodeId;

namespace {

BlockPtr block_for(std::uint64_t id, std::uint32_t drone, std::size_t plain, std::uint32_t topic = 0,
                   std::uint64_t seq = 0) {
  return std::make_shared<const wire::Block>(
      fixtures::make_block(id, wire::Digest{}, {fixtures::command_to(drone, seq ? seq : id, topic, plain)}));
}

}  // namespace

TEST_CASE("BRA evicts oldest blocks until the new block fits") {
  DroneLedger dl(NodeId{100}, 10 * 1024);
  // Blocks of roughly 1.5 KB each until about 9 KB are stored.
  std::vector<std::uint64_t> evicted;
  for (std::uint64_t id = 1; id <= 6; ++id) CHECK(dl.store(block_for(id, 100, 1200)).empty());
  CHECK(dl.current_bytes() > 7 * 1024);
  const auto big = block_for(7, 100, 2000);
  evicted = dl.store(big);
  CHECK_FALSE(evicted.empty());
  CHECK(evicted.front() == 1);
  for (std::size_t i = 1; i < evicted.size(); ++i) CHECK(evicted[i] == evicted[i - 1] + 1);
  CHECK(dl.current_bytes() <= dl.capacity_bytes());
  CHECK(dl.current_bytes() == dl.recount_bytes());
  CHECK(dl.holds_block(7));
}

TEST_CASE("fitting block causes no eviction, oversized block is refused") {
  DroneLedger dl(NodeId{100}, 10 * 1024);
  CHECK(dl.store(block_for(1, 100, 500)).empty());
  try {
    dl.store(block_for(2, 100, 12 * 1024));
    FAIL("expected error");
  } catch (const LedgerError& e) {
    CHECK(e.code() == LedgerErrc::BlockTooLarge);
  }
  CHECK_FALSE(dl.holds_block(2));
  CHECK_THROWS_AS(dl.store(block_for(3, 101, 100)), LedgerError);
}

TEST_CASE("OUTDATED_FIRST prefers superseded blocks") {
  const std::size_t one = wire::encoded_size(*block_for(1, 100, 1000, 7));
  DroneLedger dl(NodeId{100}, 3 * one + 10, BraPolicy::OutdatedFirst);
  dl.store(block_for(1, 100, 1000, 0));   // no topic: never outdated
  dl.store(block_for(2, 100, 1000, 7));   // superseded by 3
  dl.store(block_for(3, 100, 1000, 7));
  const auto ev = dl.store(block_for(4, 100, 1000, 9));
  REQUIRE(ev.size() == 1);
  CHECK(ev.front() == 2);

  DroneLedger oldest(NodeId{100}, 3 * one + 10, BraPolicy::OldestFirst);
  oldest.store(block_for(1, 100, 1000, 0));
  oldest.store(block_for(2, 100, 1000, 7));
  oldest.store(block_for(3, 100, 1000, 7));
  CHECK(oldest.store(block_for(4, 100, 1000, 9)).front() == 1);
}

TEST_CASE("property: capacity never exceeded and byte count exact") {
  DroneLedger dl(NodeId{100}, 8 * 1024, BraPolicy::OutdatedFirst);
  for (std::uint64_t id = 1; id < 200; ++id) {
    const std::size_t plain = 100 + (id * 7919) % 3000;
    dl.store(block_for(id, 100, plain, static_cast<std::uint32_t>(id % 4)));
    REQUIRE(dl.current_bytes() <= dl.capacity_bytes());
    REQUIRE(dl.current_bytes() == dl.recount_bytes());
  }
}

TEST_CASE("fetch from local, neighbour, then GCS") {
  fixtures::SmallNetwork net;
  const auto b1 = net.successor({fixtures::command_to(100, 1)});
  net.chain.append(b1);
  const auto b2 = net.successor({fixtures::command_to(101, 2)});
  net.chain.append(b2);

  DroneLedger self(NodeId{100}, 600);
  self.store(net.chain.block_ptr(1));
  DroneLedger neighbour(NodeId{101});
  neighbour.store(net.chain.block_ptr(2));
  const NeighborView views[] = {{NodeId{101}, &neighbour}};

  int exchanges = 0;
  auto cost = [&](FetchSource, NodeId, std::size_t req, std::size_t resp) {
    ++exchanges;
    CHECK(req > 0);
    CHECK(resp > 0);
  };
  CHECK(fetch_transaction(self, views, &net.chain, NodeId{10}, {NodeId{10}, 1}, cost).source == FetchSource::Local);
  CHECK(exchanges == 0);
  CHECK(fetch_transaction(self, views, &net.chain, NodeId{10}, {NodeId{10}, 2}, cost).source == FetchSource::Neighbor);

  // Evict block 1 by storing a larger one, then fetch its transaction again.
  const auto b3 = net.successor({fixtures::command_to(100, 3, 0, 300)});
  net.chain.append(b3);
  const auto ev = self.store(net.chain.block_ptr(3));
  REQUIRE(ev == std::vector<std::uint64_t>{1});
  const auto r = fetch_transaction(self, views, &net.chain, NodeId{10}, {NodeId{10}, 1}, cost);
  CHECK(r.source == FetchSource::Gcs);
  CHECK(r.served_by == NodeId{10});
  CHECK(exchanges == 2);
  CHECK_THROWS_AS(fetch_transaction(self, views, &net.chain, NodeId{10}, {NodeId{10}, 99}), LedgerError);
}

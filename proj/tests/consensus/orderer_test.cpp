#include "doctest.h"
#include "proact/consensus/orderer.hpp"
#include "proact/consensus/quorum.hpp"

using namespace proact;
using namespace proact::consensus;

namespace {
const NodeId T1{1}, T2{2}, T3{3};
}

TEST_CASE("window ordering: tip 43, arrivals TGCS2, TGCS1, TGCS3") {
  BlockOrderer bo({}, 43);
  const std::uint64_t t1 = 1000, t2 = 2000, t3 = 3000;
  CHECK(bo.on_nbr({T2, t2, 1}, 10'000));
  CHECK_FALSE(bo.on_nbr({T1, t1, 1}, 10'500));
  CHECK_FALSE(bo.on_nbr({T3, t3, 1}, 11'000));
  const auto a = bo.close_window(bo.window_close_at());
  REQUIRE(a.size() == 3);
  CHECK(a[0] == Assignment{44, T1});
  CHECK(a[1] == Assignment{45, T2});
  CHECK(a[2] == Assignment{46, T3});
}

TEST_CASE("empty window, multi-request NBR, tie break, late NBR") {
  BlockOrderer bo({}, 43);
  CHECK(bo.close_window(0).empty());
  CHECK(bo.next_block_id() == 44);

  bo.on_nbr({T2, 500, 2}, 1000);
  bo.on_nbr({T3, 500, 1}, 1100);
  bo.on_nbr({T1, 500, 1}, 1200);
  const auto a = bo.close_window(51'000);
  REQUIRE(a.size() == 4);
  CHECK(a[0] == Assignment{44, T1});
  CHECK(a[1] == Assignment{45, T2});
  CHECK(a[2] == Assignment{46, T2});
  CHECK(a[3] == Assignment{47, T3});

  // Sent before the previous window closed, arriving after: first next time.
  CHECK(bo.on_nbr({T3, 52'000, 1}, 60'000));
  bo.on_nbr({T1, 40'000, 1}, 61'000);
  const auto b = bo.close_window(110'000);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == Assignment{48, T1});
  CHECK(b[1] == Assignment{49, T3});
}

TEST_CASE("property: assigned ids ascend with timestamps") {
  BlockOrderer bo({}, 0);
  std::uint64_t seed = 12345;
  for (int w = 0; w < 50; ++w) {
    const int n = 1 + w % 7;
    for (int i = 0; i < n; ++i) {
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      bo.on_nbr({NodeId{static_cast<std::uint32_t>(seed % 9)}, (seed >> 20) % 1000, 1}, 0);
    }
    const auto first_id = bo.next_block_id();
    const auto a = bo.close_window(0);
    REQUIRE(a.size() == static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].block_id == first_id + i);
  }
}

TEST_CASE("sequential mode holds one outstanding id") {
  OrdererConfig cfg;
  cfg.sequential = true;
  BlockOrderer bo(cfg, 43);
  bo.on_nbr({T1, 1, 1}, 10);
  bo.on_nbr({T2, 2, 2}, 20);
  const auto a = bo.close_window(50'010);
  REQUIRE(a.size() == 1);
  CHECK(a[0] == Assignment{44, T1});
  CHECK(bo.queued().size() == 1);
  // A commit opens a fresh window for the waiting request.
  REQUIRE(bo.on_commit(44, 60'000));
  CHECK(bo.window_close_at() == 110'000);
  const auto b = bo.close_window(110'000);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == Assignment{45, T2});
  REQUIRE(bo.on_commit(45, 120'000));
  const auto c = bo.close_window(170'000);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == Assignment{46, T2});
  CHECK_FALSE(bo.on_commit(46, 180'000));
  CHECK_FALSE(bo.window_open());
}

TEST_CASE("sequential window lets an older late NBR overtake a queued one") {
  OrdererConfig cfg;
  cfg.sequential = true;
  BlockOrderer bo(cfg, 43);
  bo.on_nbr({T1, 100, 1}, 100);
  bo.close_window(50'100);
  REQUIRE(bo.on_nbr({T2, 300, 1}, 300));
  CHECK(bo.close_window(50'300).empty());  // 44 still outstanding
  REQUIRE(bo.on_commit(44, 60'000));
  bo.on_nbr({T3, 200, 1}, 70'000);  // sent before T2's request, arrived later
  const auto a = bo.close_window(110'000);
  REQUIRE(a.size() == 1);
  CHECK(a[0] == Assignment{45, T3});
}

TEST_CASE("parallel commits never open windows") {
  BlockOrderer bo({}, 43);
  bo.on_nbr({T1, 1, 1}, 0);
  bo.close_window(50'000);
  bo.on_nbr({T2, 2, 1}, 60'000);
  CHECK_FALSE(bo.on_commit(44, 70'000));
}

TEST_CASE("void renumbers higher ids") {
  BlockOrderer bo({}, 43, 0);
  bo.on_nbr({T1, 1, 1}, 0);
  bo.on_nbr({T2, 2, 1}, 0);
  bo.on_nbr({T3, 3, 1}, 0);
  bo.close_window(50'000);
  bo.on_commit(44, 100'000);
  CHECK_FALSE(bo.overdue(100'000 + 4'999'999));
  REQUIRE(bo.overdue(100'000 + 5'000'000) == 45u);
  CHECK(bo.apply_void(45, 5'100'000));
  CHECK(bo.outstanding().size() == 1);
  CHECK(bo.outstanding().at(45) == T3);
  CHECK(bo.next_block_id() == 46);
  CHECK_FALSE(bo.apply_void(44, 5'100'000));  // committed: ignored

  BlockOrderer two({}, 43, 0);
  for (std::uint32_t i = 1; i <= 4; ++i) two.on_nbr({NodeId{i}, i, 1}, 0);
  two.close_window(0);  // 44..47
  CHECK(two.apply_void(45, 1));
  CHECK(two.apply_void(45, 2));  // old 46 now 45
  CHECK(two.outstanding().size() == 2);
  CHECK(two.outstanding().at(44) == NodeId{1});
  CHECK(two.outstanding().at(45) == NodeId{4});
  CHECK(renumber_after_void(46, 45) == 45);
  CHECK(renumber_after_void(44, 45) == 44);
}

TEST_CASE("handoff snapshot round trip") {
  BlockOrderer bo({}, 10, 0);
  bo.on_nbr({T1, 1, 2}, 0);
  bo.close_window(0);
  bo.on_nbr({T2, 5, 1}, 10);
  const auto snap = bo.snapshot();
  const auto back = BlockOrderer::restore({}, snap, 20);
  CHECK(back.next_block_id() == 13);
  CHECK(back.outstanding().size() == 2);
  CHECK(back.window_open());
  CHECK(back.snapshot() == snap);
}

TEST_CASE("quorum") {
  CHECK(commit_check(26, 0, 50) == CommitStatus::Committed);
  CHECK(commit_check(25, 0, 50) == CommitStatus::Pending);
  CHECK(commit_check(0, 3, 5) == CommitStatus::Rejected);
  CHECK(commit_check(1, 1, 1) == CommitStatus::Committed);
  VoteTally t;
  CHECK(t.add_ack(T1));
  CHECK_FALSE(t.add_ack(T1));
  CHECK_FALSE(t.add_error(T1));
  CHECK(t.add_error(T2));
  CHECK(t.status(3) == CommitStatus::Pending);
  t.add_ack(T3);
  CHECK(t.status(3) == CommitStatus::Committed);
}

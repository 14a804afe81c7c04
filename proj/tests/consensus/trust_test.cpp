#include <set>

#include "doctest.h"
#include "proact/consensus/assignment.hpp"
#include "proact/consensus/trust.hpp"

using namespace proact;
using namespace proact::consensus;

TEST_CASE("PoAT eligibility conditions") {
  TrustParams p{300, 60, 150, 10};
  p.validate();
  CHECK(poat_eligible(TrustRecord::from_totals({40, 40, 40, 40, 40}, 60), p, 300));
  CHECK_FALSE(poat_eligible(TrustRecord::from_totals({40, 40, 5, 40, 40}, 60), p, 300));
  CHECK_FALSE(poat_eligible(TrustRecord(60, 0), p, 300));
  CHECK_FALSE(poat_eligible(TrustRecord::from_totals({40, 40, 40, 40, 40}, 60), p, 200));  // window not covered
  // Window total must strictly exceed TH_TN.
  CHECK_FALSE(poat_eligible(TrustRecord::from_totals({30, 30, 30, 30, 30}, 60), p, 300));
}

TEST_CASE("trust params validation") {
  CHECK_THROWS(TrustParams{610, 60, 300, 10}.validate());
  CHECK_THROWS(TrustParams{600, 60, -1, 10}.validate());
  CHECK(TrustParams{}.subperiods_per_window() == 10);
}

TEST_CASE("trust updates") {
  TrustRecord r(60, 0);
  for (int i = 0; i < 5; ++i) r.add(TrustEvent::ValidBlockParticipation, 1.0);
  CHECK(r.total(0) == 5);
  r.add(TrustEvent::InvalidBlock, 2.0);
  CHECK(r.total(0) == -5);
  TrustRecord c(60, 0);
  c.add(TrustEvent::FalseAck, 61.0, TrustWeights{2, -3});
  CHECK(c.total(1) == -3);
  c.add(TrustEvent::ValidForward, 61.0, TrustWeights{2, -3});
  CHECK(c.total(1) == -1);
}

TEST_CASE("TH_CA") {
  CHECK(compute_th_ca(20, 5) == 4);
  CHECK(compute_th_ca(1, 1) == 1);
  CHECK(compute_th_ca(7, 3) == 2);
  CHECK(compute_th_ca(2, 5) == 1);
  CHECK_THROWS(compute_th_ca(4, 0));
}

namespace {
std::vector<NodeId> ids(std::uint32_t from, std::uint32_t n) {
  std::vector<NodeId> v;
  for (std::uint32_t i = 0; i < n; ++i) v.push_back(NodeId{from + i});
  return v;
}
}  // namespace

TEST_CASE("GCS to TGCS assignment") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    const auto a = assign_gcs_to_tgcs(ids(100, 30), ids(1, 20), rng);
    std::size_t total = 0;
    std::set<NodeId> seen;
    for (const auto& [t, g] : a) {
      CHECK((g.size() == 1 || g.size() == 2));
      total += g.size();
      seen.insert(g.begin(), g.end());
    }
    CHECK(total == 30);
    CHECK(seen.size() == 30);
  }
  std::mt19937_64 rng(1);
  const auto even = assign_gcs_to_tgcs(ids(100, 4), ids(1, 2), rng);
  CHECK(even.at(NodeId{1}).size() == 2);
  CHECK(even.at(NodeId{2}).size() == 2);

  std::set<std::size_t> first_sizes;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 r(seed);
    const auto a = assign_gcs_to_tgcs(ids(100, 5), ids(1, 2), r);
    first_sizes.insert(a.at(NodeId{1}).size());
    CHECK(a.at(NodeId{1}).size() + a.at(NodeId{2}).size() == 5);
  }
  CHECK(first_sizes == std::set<std::size_t>{2, 3});

  CHECK_THROWS(assign_gcs_to_tgcs(ids(100, 4), {}, rng));
  CHECK_THROWS(assign_gcs_to_tgcs(ids(1, 4), ids(1, 2), rng));
}

TEST_CASE("BO rotation") {
  const auto cas = ids(1, 5);
  CHECK(bo_index(5, 1250, 600) == 2);
  CHECK(rotate_bo(cas, 1250, 600) == NodeId{3});
  CHECK(rotate_bo(cas, 0, 600) == NodeId{1});
  CHECK(rotate_bo(ids(9, 1), 123456, 600) == NodeId{9});
}

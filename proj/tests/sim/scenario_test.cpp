#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "proact/sim/scenario.hpp"

using namespace proact;
using namespace proact::sim;

namespace {

ScenarioConfig small(std::uint64_t seed = 1) {
  ScenarioConfig c;
  c.seed = seed;
  c.gcs_per_ca = 3;
  c.tgcs_per_ca = 3;
  c.uavn_per_gcs = 1;
  c.uav_per_uavn = 6;
  c.malicious_fraction = 0.2;
  c.attack_interval_s = 2;
  c.sim_duration_s = 6;
  c.drain_s = 4;
  return c;
}

void check_conservation(const RunResult& r) {
  const auto& m = r.metrics;
  CHECK(m.txs_generated == r.txs.all().size());
  CHECK(m.txs_generated == m.txs_committed + m.txs_rejected + m.txs_dropped + m.txs_pending);
  CHECK(m.txs_committed == r.committed.size());
  for (const auto& k : r.committed) {
    const auto* rec = r.txs.find(k);
    REQUIRE(rec != nullptr);
    CHECK(rec->fate == TxFate::Committed);
    CHECK(rec->committed_us >= rec->generated_us);
  }
}

}  // namespace

TEST_CASE("invalid configurations are refused before the run") {
  auto c = small();
  c.tgcs_per_ca = 4;
  CHECK_THROWS_AS(run(c), ConfigError);
  c = small();
  c.network[LinkClass::UavGcs].loss_rate = 1.0;
  try {
    run(c);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "uav_gcs");
  }
  CHECK_THROWS_AS(parse_mode("fast"), ConfigError);
}

TEST_CASE("infeasible topology is reported") {
  auto c = small();
  c.network[LinkClass::UavGcs].range_m = 20;
  c.network[LinkClass::UavUav].range_m = 5;
  CHECK_THROWS_AS(run(c), TopologyError);
}

TEST_CASE("loss-free run commits everything and keeps the invariants") {
  for (Mode mode : {Mode::Parallel, Mode::Sequential}) {
    CAPTURE(to_string(mode));
    auto c = small();
    c.mode = mode;
    c.network.make_loss_free();
    const auto r = run(c);
    CHECK(r.safety.total() == 0);
    check_conservation(r);
    CHECK(r.metrics.txs_committed > 100);
    CHECK(r.metrics.txs_dropped == 0);
    CHECK(r.metrics.txs_pending == 0);
    CHECK(uncommitted_before(r, 0).empty());
    CHECK(r.chain_height == r.metrics.blocks_committed);
    CHECK(r.tgcs_count == 3);
    REQUIRE(r.metrics.adr);
    CHECK(*r.metrics.adr >= 0);
    CHECK(*r.metrics.adr <= 1);
    CHECK(r.metrics.dec_mean_kj > 0);
  }
}

TEST_CASE("a single mining station commits its own blocks") {
  for (Mode mode : {Mode::Parallel, Mode::Sequential}) {
    CAPTURE(to_string(mode));
    auto c = small();
    c.mode = mode;
    c.tgcs_per_ca = 1;
    c.network.make_loss_free();
    const auto r = run(c);
    CHECK(r.tgcs_count == 1);
    CHECK(r.safety.total() == 0);
    CHECK(r.metrics.blocks_committed > 2);
    CHECK(r.metrics.txs_pending == 0);
    CHECK(uncommitted_before(r, 0).empty());
  }
}

TEST_CASE("identical configurations give identical runs") {
  auto c = small(5);
  const auto a = run(c);
  const auto b = run(c);
  CHECK(csv_row(a.metrics) == csv_row(b.metrics));
  CHECK(a.committed == b.committed);
  CHECK(a.events_processed == b.events_processed);
  CHECK(a.metrics.tbd_samples_s == b.metrics.tbd_samples_s);

  const auto d = run(small(6));
  CHECK(a.committed != d.committed);
}

TEST_CASE("stalled miners get their blocks voided without losing transactions") {
  std::uint64_t voided = 0;
  for (std::uint64_t seed = 2; seed <= 6; ++seed) {
    CAPTURE(seed);
    auto c = small(seed);
    c.network.make_loss_free();
    // Every void holds the chain for T_blk, so keep both small enough for
    // the drain to absorb.
    c.consensus.miner_stall_prob = 0.05;
    c.consensus.t_blk_s = 1;
    c.drain_s = 12;
    const auto r = run(c);
    voided += r.metrics.blocks_voided;
    CHECK(r.safety.total() == 0);
    check_conservation(r);
    CHECK(uncommitted_before(r, 0).empty());
  }
  CHECK(voided > 0);
}

TEST_CASE("block orderer rotates between CAs") {
  auto c = small(3);
  c.n_ca = 2;
  c.gcs_per_ca = 2;
  c.tgcs_per_ca = 2;
  c.consensus.t_bo_s = 2;
  c.network.make_loss_free();
  const auto r = run(c);
  CHECK(r.tgcs_count == 4);
  CHECK(r.safety.total() == 0);
  check_conservation(r);
  CHECK(uncommitted_before(r, 0).empty());
  // Commits keep coming after several handoffs.
  bool late = false;
  for (const auto& k : r.committed) late |= r.txs.find(k)->generated_us > 5'000'000;
  CHECK(late);
}

TEST_CASE("event log and ground truth files") {
  auto c = small();
  c.sim_duration_s = 3;
  c.drain_s = 2;
  c.event_log_path = "sim_test_events.log";
  c.ground_truth_path = "sim_test_truth.csv";
  const auto r = run(c);
  std::ifstream log(c.event_log_path);
  REQUIRE(log);
  std::string line;
  int lines = 0;
  bool commit = false;
  while (std::getline(log, line)) {
    ++lines;
    commit |= line.find(" commit ") != std::string::npos;
  }
  CHECK(lines > 100);
  CHECK(commit);
  std::ifstream truth(c.ground_truth_path);
  CHECK(truth.good());
  std::remove(c.event_log_path.c_str());
  std::remove(c.ground_truth_path.c_str());
}

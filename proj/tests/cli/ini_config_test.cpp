#include <sstream>

#include "doctest.h"
#include "proact/cli/ini_config.hpp"

using namespace proact;
using namespace proact::cli;

namespace {

std::vector<SweepPoint> plan(const std::string& text) {
  std::istringstream in(text);
  return parse_plan(in);
}

std::string field_of(const std::string& text) {
  try {
    plan(text);
  } catch (const sim::ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("empty file gives the defaults") {
  const auto p = plan("");
  REQUIRE(p.size() == 1);
  CHECK(p[0].label.empty());
  CHECK(p[0].cfg.n_uav() == sim::ScenarioConfig{}.n_uav());
}

TEST_CASE("keys land in their fields") {
  const auto p = plan(
      "[scenario]\nmalicious_fraction = 0.4\ndata_tx_size = 1024\nmode = sequential\ntiering = false\n"
      "[network]\nmtu = 1000\n[network.uav_gcs]\nloss_rate = 0.01\nrange = 1200\n"
      "[consensus]\nt_bis = 0.02\nverify_per_tx = 0.0001\n[detection]\nw_detect = 3\n");
  REQUIRE(p.size() == 1);
  const auto& c = p[0].cfg;
  CHECK(c.malicious_fraction == 0.4);
  CHECK(c.data_tx_size == 1024);
  CHECK(c.mode == sim::Mode::Sequential);
  CHECK_FALSE(c.tiering);
  CHECK(c.network.mtu_bytes == 1000);
  CHECK(c.network[sim::LinkClass::UavGcs].loss_rate == 0.01);
  CHECK(c.network[sim::LinkClass::UavGcs].range_m == 1200);
  CHECK(c.consensus.t_bis_s == 0.02);
  CHECK(c.consensus.verify_s_per_tx == 0.0001);
  CHECK(c.detection.w_detect_s == 3);
}

TEST_CASE("loss_free clears every class") {
  const auto p = plan("[network]\nloss_free = true\n");
  for (const auto& l : p[0].cfg.network.links) CHECK(l.loss_rate == 0);
}

TEST_CASE("sweeps expand to the cross product, last key fastest") {
  const auto p = plan("[scenario]\ndata_tx_size = 1024, 10240, 102400\nmalicious_fraction = 0.1,0.7\nseed = 4\n");
  REQUIRE(p.size() == 6);
  const std::size_t sizes[] = {1024, 1024, 10240, 10240, 102400, 102400};
  const double ms[] = {0.1, 0.7, 0.1, 0.7, 0.1, 0.7};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(p[i].cfg.data_tx_size == sizes[i]);
    CHECK(p[i].cfg.malicious_fraction == ms[i]);
    CHECK(p[i].cfg.seed == 4);
  }
  CHECK(p[3].label == "scenario.data_tx_size=10240 scenario.malicious_fraction=0.7");
}

TEST_CASE("errors name the offending field") {
  CHECK(field_of("[scenario]\nmalicious_fraction = 1.5\n") == "malicious_fraction");
  CHECK(field_of("[scenario]\nmalicious_fraction = 0.1, 1.5\n") == "malicious_fraction");
  CHECK(field_of("[scenario]\nsim_duration = soon\n") == "scenario.sim_duration");
  CHECK(field_of("[scenario]\nwarp = 9\n") == "scenario.warp");
  CHECK(field_of("[network.uav_gcs]\nreliable = maybe\n") == "network.uav_gcs.reliable");
  CHECK(field_of("[scenario]\nmode = fast\n") == "mode");
  CHECK(field_of("[scenario]\nuav_per_uavn = 5,,10\n") == "scenario.uav_per_uavn");
  CHECK(field_of("[scenario]\nn_ca = 1\nn_ca = 2\n") == "config");
  CHECK(field_of("[scenario]\ntgcs_per_ca = 9\n") == "tgcs_per_ca");
}

TEST_CASE("every documented key is accepted") {
  for (const auto& k : known_keys()) {
    const auto dot = k.rfind('.');
    sim::ScenarioConfig c;
    const std::string section = k.substr(0, dot), key = k.substr(dot + 1);
    CAPTURE(k);
    std::string v = "1";
    if (key == "mode") v = "parallel";
    if (key == "bra_policy") v = "outdated_first";
    if (key == "event_log" || key == "ground_truth") v = "x.txt";
    CHECK_NOTHROW(apply_key(c, section, key, v));
  }
}

TEST_CASE("unreadable file") {
  try {
    load_plan("/nonexistent/scenario.ini");
    FAIL("expected ConfigError");
  } catch (const sim::ConfigError& e) {
    CHECK(e.field() == "config");
  }
}

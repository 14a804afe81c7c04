#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "proact/cli/commands.hpp"

using namespace proact;
using namespace proact::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("proact-cli-test-" + std::to_string(std::rand()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string write_config(const fs::path& dir, const std::string& body) {
  const auto p = dir / "scenario.ini";
  std::ofstream(p) << body;
  return p.string();
}

const char* kSmall =
    "[scenario]\ngcs_per_ca = 3\ntgcs_per_ca = 3\nuavn_per_gcs = 1\nuav_per_uavn = 5\nsim_duration = 3\ndrain = 2\n";

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("mean and sample standard deviation") {
  CHECK(mean_sd({2, 4, 4, 4, 5, 5, 7, 9}) == "5 ± 2.13809");
  CHECK(mean_sd({3}) == "3 ± 0");
  CHECK(mean_sd({}) == "na");
}

TEST_CASE("run writes one row per seed and point, ordered by seed then point") {
  TempDir t;
  RunManifest m;
  m.config_path = write_config(t.path, std::string(kSmall) + "data_tx_size = 1024, 2048\n");
  m.seeds = {2, 1};
  m.out_dir = (t.path / "out").string();
  std::ostringstream out, err;
  REQUIRE(cmd_run(m, out, err) == kExitOk);
  std::istringstream csv(slurp(t.path / "out" / "metrics.csv"));
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(csv, line)) rows.push_back(line);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == sim::csv_header());
  CHECK(rows[1].rfind("2,parallel,15,0.2,1024,", 0) == 0);
  CHECK(rows[2].rfind("2,parallel,15,0.2,2048,", 0) == 0);
  CHECK(rows[3].rfind("1,parallel,15,0.2,1024,", 0) == 0);
  CHECK(rows[4].rfind("1,parallel,15,0.2,2048,", 0) == 0);
  CHECK(slurp(t.path / "out" / "summary.txt").find("point 1: scenario.data_tx_size=2048") != std::string::npos);
  CHECK(m.emitted.size() == 2);

  SUBCASE("no overwrite without force") {
    RunManifest again = m;
    again.emitted.clear();
    CHECK(cmd_run(again, out, err) == kExitValidation);
    CHECK(err.str().find("--force") != std::string::npos);
    const std::string before = slurp(t.path / "out" / "metrics.csv");
    again.force = true;
    CHECK(cmd_run(again, out, err) == kExitOk);
    CHECK(slurp(t.path / "out" / "metrics.csv") == before);
  }
}

TEST_CASE("metrics csv is byte-identical across repeated runs and job counts") {
  TempDir t;
  RunManifest a;
  a.config_path = write_config(t.path, kSmall);
  a.seeds = {1, 2, 3};
  a.out_dir = (t.path / "a").string();
  a.jobs = 1;
  RunManifest b = a;
  b.out_dir = (t.path / "b").string();
  b.jobs = 3;
  std::ostringstream out, err;
  REQUIRE(cmd_run(a, out, err) == kExitOk);
  REQUIRE(cmd_run(b, out, err) == kExitOk);
  CHECK(slurp(t.path / "a" / "metrics.csv") == slurp(t.path / "b" / "metrics.csv"));
}

TEST_CASE("the output directory variable wins over --out") {
  TempDir t;
  RunManifest m;
  m.config_path = write_config(t.path, kSmall);
  m.seeds = {1};
  m.out_dir = (t.path / "flag").string();
  const std::string env = (t.path / "env").string();
  ::setenv(kOutDirEnv, env.c_str(), 1);
  std::ostringstream out, err;
  const int rc = cmd_run(m, out, err);
  ::unsetenv(kOutDirEnv);
  CHECK(rc == kExitOk);
  CHECK(fs::exists(t.path / "env" / "metrics.csv"));
  CHECK_FALSE(fs::exists(t.path / "flag"));
}

TEST_CASE("validation and runtime failures map to their exit codes") {
  TempDir t;
  std::ostringstream out, err;
  RunManifest m;
  m.seeds = {1};
  m.out_dir = (t.path / "out").string();

  m.config_path = write_config(t.path, "[scenario]\nmalicious_fraction = 1.5\n");
  CHECK(cmd_run(m, out, err) == kExitValidation);
  CHECK(err.str().find("malicious_fraction") != std::string::npos);

  m.config_path = write_config(t.path, std::string(kSmall) + "[network.uav_gcs]\nrange = 20\n[network.uav_uav]\nrange = 5\n");
  CHECK(cmd_run(m, out, err) == kExitRuntime);

  m.config_path = write_config(t.path, kSmall);
  m.seeds.clear();
  CHECK(cmd_run(m, out, err) == kExitValidation);
}

TEST_CASE("compare pairs both modes per seed") {
  TempDir t;
  RunManifest m;
  m.config_path = write_config(t.path, std::string(kSmall) + "[network]\nloss_free = true\n");
  m.seeds = {1, 2};
  m.out_dir = (t.path / "cmp").string();
  std::ostringstream out, err;
  REQUIRE(cmd_compare(m, out, err) == kExitOk);
  const auto csv = slurp(t.path / "cmp" / "compare.csv");
  CHECK(csv.rfind("point,seed,tbd_parallel_s,tbd_sequential_s,ratio,", 0) == 0);
  CHECK(csv.find("\n0,1,") != std::string::npos);
  CHECK(csv.find("\n0,2,") != std::string::npos);
  CHECK(csv.find(",no\n") == std::string::npos);
  CHECK(out.str().find("committed sets identical") != std::string::npos);
}

TEST_CASE("selftest passes clean and fails on a corrupted S-box") {
  std::ostringstream clean, faulty;
  CHECK(cmd_selftest({}, clean) == kExitOk);
  CHECK(clean.str().find("FAIL") == std::string::npos);
  SelftestFaults f;
  f.corrupt_sbox = true;
  CHECK(cmd_selftest(f, faulty) == kExitSelftest);
  CHECK(faulty.str().find("FAIL  spongent-88 abc") != std::string::npos);
  CHECK(faulty.str().find("pass  ordering example") != std::string::npos);

  std::ostringstream v;
  CHECK(cmd_selftest_vectors(v) == kExitOk);
  CHECK(v.str().find("spongent-224 abc 4d7bf9f6750cd79c46aa377e24fcee2607aa856cba98657cfcef5811") != std::string::npos);
}

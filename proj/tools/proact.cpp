// proact: run scenarios, compare ordering modes, check the build.

#include <CLI11.hpp>
#include <iostream>

#include "proact/cli/commands.hpp"

using namespace proact;

int main(int argc, char** argv) {
  CLI::App app{"PROACT IoD blockchain simulator"};
  app.require_subcommand(1);

  cli::RunManifest manifest;
  std::string mode;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", manifest.config_path, "Scenario INI file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seeds", manifest.seeds, "Comma-separated seeds")->required()->delimiter(',');
    sub->add_option("--jobs", manifest.jobs, "Concurrent runs (0: one per core)");
    sub->add_flag("--force", manifest.force, "Overwrite existing outputs");
  };

  auto* run = app.add_subcommand("run", "Run every sweep point for every seed; write metrics.csv and summary.txt");
  add_common(run);
  run->add_option("--out", manifest.out_dir, "Output directory (PROACT_OUT_DIR overrides)");
  run->add_option("--mode", mode, "Override the ordering mode")->check(CLI::IsMember({"parallel", "sequential"}));

  auto* compare = app.add_subcommand("compare", "Paired parallel vs sequential runs per seed");
  add_common(compare);
  compare->add_option("--out", manifest.out_dir, "Also write compare.csv here (PROACT_OUT_DIR overrides)");

  cli::SelftestFaults faults;
  auto* selftest = app.add_subcommand("selftest", "Pinned vectors, wire fixtures and protocol examples");
  selftest->add_flag("--corrupt-sbox", faults.corrupt_sbox, "Fault injection: swap two S-box entries");

  auto* vectors = app.add_subcommand("selftest-vectors", "Print the pinned SPONGENT vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), static_cast<int>(cli::kExitValidation));
  }

  if (!mode.empty()) manifest.mode = sim::parse_mode(mode);
  if (run->parsed()) return cli::cmd_run(manifest, std::cout, std::cerr);
  if (compare->parsed()) return cli::cmd_compare(manifest, std::cout, std::cerr);
  if (selftest->parsed()) return cli::cmd_selftest(faults, std::cout);
  if (vectors->parsed()) return cli::cmd_selftest_vectors(std::cout);
  return cli::kExitValidation;
}

#include "proact/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "proact/sim/topology.hpp"

namespace proact::cli {

namespace fs = std::filesystem;
using sim::format_number;

namespace {

std::string with_suffix(const std::string& path, std::size_t point, std::uint64_t seed) {
  fs::path p(path);
  const std::string stem = p.stem().string() + "-p" + std::to_string(point) + "-s" + std::to_string(seed);
  return (p.parent_path() / (stem + p.extension().string())).string();
}

std::string resolve(const std::string& path, const std::string& dir) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(dir) / path).string();
}

std::string out_dir_of(const RunManifest& m) {
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return m.out_dir;
}

/// Creates the directory and refuses to clobber existing outputs.
bool prepare_outputs(const std::string& dir, const std::vector<std::string>& names, bool force, std::ostream& err) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "error: cannot create " << dir << ": " << ec.message() << "\n";
    return false;
  }
  for (const auto& n : names) {
    const fs::path p = fs::path(dir) / n;
    if (fs::exists(p) && !force) {
      err << "error: " << p.string() << " exists; pass --force to overwrite\n";
      return false;
    }
  }
  return true;
}

void write_file(const fs::path& p, const std::string& text, RunManifest& m) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + p.string());
  m.emitted.push_back(p.string());
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (auto v : seeds) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

std::vector<SweepPoint> load_for(const RunManifest& m, const std::string& dir) {
  auto plan = load_plan(m.config_path);
  for (auto& p : plan) {
    if (m.mode) p.cfg.mode = *m.mode;
    p.cfg.event_log_path = resolve(p.cfg.event_log_path, dir);
    p.cfg.ground_truth_path = resolve(p.cfg.ground_truth_path, dir);
  }
  return plan;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const sim::ConfigError& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  } catch (const sim::TopologyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

std::string mean_sd(const std::vector<double>& v) {
  if (v.empty()) return "na";
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = v.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  return format_number(mean) + " ± " + format_number(sd);
}

std::vector<RunOutcome> run_all(const std::vector<SweepPoint>& plan, const std::vector<std::uint64_t>& seeds,
                                unsigned jobs) {
  std::vector<RunOutcome> out;
  for (auto seed : seeds)
    for (std::size_t p = 0; p < plan.size(); ++p) out.push_back({p, seed, {}});

  const bool many = out.size() > 1;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= out.size()) return;
      auto cfg = plan[out[i].point].cfg;
      cfg.seed = out[i].seed;
      if (many && !cfg.event_log_path.empty()) cfg.event_log_path = with_suffix(cfg.event_log_path, out[i].point, cfg.seed);
      if (many && !cfg.ground_truth_path.empty())
        cfg.ground_truth_path = with_suffix(cfg.ground_truth_path, out[i].point, cfg.seed);
      try {
        out[i].result = sim::run(cfg);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = out.size();
        return;
      }
    }
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, out.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

int cmd_run(RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (m.seeds.empty()) throw sim::ConfigError("seeds", "at least one seed is required");
    const std::string dir = out_dir_of(m);
    if (dir.empty()) throw sim::ConfigError("out", "no output directory (use --out or " + std::string(kOutDirEnv) + ")");
    const auto plan = load_for(m, dir);
    if (!prepare_outputs(dir, {"metrics.csv", "summary.txt"}, m.force, err)) return static_cast<int>(kExitValidation);

    const auto runs = run_all(plan, m.seeds, m.jobs);

    std::string csv = sim::csv_header() + "\n";
    for (const auto& r : runs) csv += sim::csv_row(r.result.metrics) + "\n";

    std::ostringstream sum;
    sum << "config: " << m.config_path << "\n";
    sum << "seeds: " << join_seeds(m.seeds) << "\n";
    for (std::size_t p = 0; p < plan.size(); ++p) {
      std::vector<double> adr, tbd, dec, bto, committed, voided, dropped;
      std::uint64_t safety = 0;
      for (const auto& r : runs) {
        if (r.point != p) continue;
        const auto& mr = r.result.metrics;
        if (mr.adr) adr.push_back(*mr.adr);
        tbd.push_back(mr.tbd_mean_s);
        dec.push_back(mr.dec_mean_kj);
        bto.push_back(mr.bto_mean);
        committed.push_back(static_cast<double>(mr.blocks_committed));
        voided.push_back(static_cast<double>(mr.blocks_voided));
        dropped.push_back(static_cast<double>(mr.packets_dropped));
        safety += r.result.safety.total();
      }
      const auto& c = plan[p].cfg;
      sum << "\npoint " << p << (plan[p].label.empty() ? "" : ": " + plan[p].label) << "\n";
      sum << "  mode " << sim::to_string(c.mode) << ", n_uav " << c.n_uav() << ", M " << format_number(c.malicious_fraction)
          << ", S_DT " << c.data_tx_size << "\n";
      sum << "  adr               " << mean_sd(adr) << "\n";
      sum << "  tbd_mean_s        " << mean_sd(tbd) << "\n";
      sum << "  dec_mean_kj       " << mean_sd(dec) << "\n";
      sum << "  bto_mean          " << mean_sd(bto) << "\n";
      sum << "  blocks_committed  " << mean_sd(committed) << "\n";
      sum << "  blocks_voided     " << mean_sd(voided) << "\n";
      sum << "  packets_dropped   " << mean_sd(dropped) << "\n";
      sum << "  safety violations " << safety << "\n";
    }

    write_file(fs::path(dir) / "metrics.csv", csv, m);
    write_file(fs::path(dir) / "summary.txt", sum.str(), m);
    out << sum.str();
    out << "\nwrote";
    for (const auto& f : m.emitted) out << " " << f;
    out << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_compare(RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (m.seeds.empty()) throw sim::ConfigError("seeds", "at least one seed is required");
    const std::string dir = out_dir_of(m);
    const auto base = load_for(m, dir.empty() ? "." : dir);
    if (!dir.empty() && !prepare_outputs(dir, {"compare.csv"}, m.force, err)) return static_cast<int>(kExitValidation);

    // Point 2p runs parallel, 2p+1 sequential; everything else is shared.
    std::vector<SweepPoint> plan;
    for (const auto& p : base)
      for (auto mode : {sim::Mode::Parallel, sim::Mode::Sequential}) {
        SweepPoint q = p;
        q.cfg.mode = mode;
        plan.push_back(std::move(q));
      }
    const auto runs = run_all(plan, m.seeds, m.jobs);
    auto find = [&](std::size_t point, std::uint64_t seed) -> const sim::RunResult& {
      for (const auto& r : runs)
        if (r.point == point && r.seed == seed) return r.result;
      throw std::logic_error("missing run");
    };

    std::string csv = "point,seed,tbd_parallel_s,tbd_sequential_s,ratio,dec_parallel_kj,dec_sequential_kj,same_committed\n";
    std::ostringstream table;
    for (std::size_t p = 0; p < base.size(); ++p) {
      table << "point " << p << (base[p].label.empty() ? "" : ": " + base[p].label) << ", " << base[p].cfg.n_tgcs()
            << " TGCS\n";
      table << "  seed  tbd_par_s  tbd_seq_s  ratio     dec_par_kj  dec_seq_kj  same_committed\n";
      std::vector<double> ratios;
      bool all_same = true;
      for (auto seed : m.seeds) {
        const auto& a = find(2 * p, seed);
        const auto& b = find(2 * p + 1, seed);
        const double ratio = a.metrics.tbd_mean_s > 0 ? b.metrics.tbd_mean_s / a.metrics.tbd_mean_s : 0.0;
        const bool same = a.committed == b.committed;
        all_same = all_same && same;
        ratios.push_back(ratio);
        const std::string row = std::to_string(p) + "," + std::to_string(seed) + "," + format_number(a.metrics.tbd_mean_s) +
                                "," + format_number(b.metrics.tbd_mean_s) + "," + format_number(ratio) + "," +
                                format_number(a.metrics.dec_mean_kj) + "," + format_number(b.metrics.dec_mean_kj) + "," +
                                (same ? "yes" : "no");
        csv += row + "\n";
        char line[160];
        std::snprintf(line, sizeof line, "  %-5llu %-10s %-10s %-9s %-11s %-11s %s\n",
                      static_cast<unsigned long long>(seed), format_number(a.metrics.tbd_mean_s).c_str(),
                      format_number(b.metrics.tbd_mean_s).c_str(), format_number(ratio).c_str(),
                      format_number(a.metrics.dec_mean_kj).c_str(), format_number(b.metrics.dec_mean_kj).c_str(),
                      same ? "yes" : "no");
        table << line;
      }
      table << "  ratio " << mean_sd(ratios) << ", committed sets " << (all_same ? "identical" : "DIFFER") << "\n";
    }
    out << table.str();
    if (!dir.empty()) {
      write_file(fs::path(dir) / "compare.csv", csv, m);
      out << "wrote " << m.emitted.back() << "\n";
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace proact::cli

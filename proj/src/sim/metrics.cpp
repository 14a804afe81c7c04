#include "proact/sim/metrics.hpp"

#include <cstdio>
#include <numeric>

namespace proact::sim {

const char* to_string(TxFate f) {
  switch (f) {
    case TxFate::Pending: return "pending";
    case TxFate::Committed: return "committed";
    case TxFate::Rejected: return "rejected";
    case TxFate::Dropped: return "dropped";
  }
  return "?";
}

void TxBook::generated(const wire::TxKey& k, TxKind kind, std::uint64_t at_us, std::size_t original_bytes,
                       bool malicious) {
  TxRecord r;
  r.kind = kind;
  r.generated_us = at_us;
  r.original_bytes = original_bytes;
  r.malicious = malicious;
  txs_.emplace(k, r);
}

void TxBook::committed(const wire::TxKey& k, std::uint64_t at_us) {
  auto it = txs_.find(k);
  if (it == txs_.end() || it->second.fate == TxFate::Committed || it->second.fate == TxFate::Rejected) return;
  it->second.fate = TxFate::Committed;
  it->second.committed_us = at_us;
}

void TxBook::rejected(const wire::TxKey& k) {
  auto it = txs_.find(k);
  if (it != txs_.end() && it->second.fate == TxFate::Pending) it->second.fate = TxFate::Rejected;
}

void TxBook::dropped(const wire::TxKey& k) {
  auto it = txs_.find(k);
  if (it != txs_.end() && it->second.fate == TxFate::Pending) it->second.fate = TxFate::Dropped;
}

void TxBook::revived(const wire::TxKey& k) {
  auto it = txs_.find(k);
  if (it != txs_.end() && it->second.fate == TxFate::Dropped) it->second.fate = TxFate::Pending;
}

const TxRecord* TxBook::find(const wire::TxKey& k) const {
  auto it = txs_.find(k);
  return it == txs_.end() ? nullptr : &it->second;
}

std::size_t TxBook::count(TxFate f) const {
  std::size_t n = 0;
  for (const auto& [k, r] : txs_) n += r.fate == f;
  return n;
}

namespace {

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

MetricsRecord compute_metrics(const ScenarioConfig& cfg, const RunFacts& facts) {
  MetricsRecord m;
  m.seed = cfg.seed;
  m.mode = cfg.mode;
  m.n_uav = cfg.n_uav();
  m.malicious_fraction = cfg.malicious_fraction;
  m.data_tx_size = cfg.data_tx_size;

  if (facts.attacks) {
    m.attacks_injected = facts.attacks->size();
    for (const auto& a : *facts.attacks) m.attacks_detected += a.detected;
    if (m.attacks_injected > 0)
      m.adr = static_cast<double>(m.attacks_detected) / static_cast<double>(m.attacks_injected);
  }

  if (facts.txs) {
    for (const auto& [k, r] : facts.txs->all()) {
      ++m.txs_generated;
      switch (r.fate) {
        case TxFate::Committed:
          ++m.txs_committed;
          m.tbd_samples_s.push_back(static_cast<double>(r.committed_us - r.generated_us) * 1e-6);
          break;
        case TxFate::Rejected: ++m.txs_rejected; break;
        case TxFate::Dropped: ++m.txs_dropped; break;
        case TxFate::Pending: ++m.txs_pending; break;
      }
    }
  }
  m.tbd_mean_s = mean(m.tbd_samples_s);
  m.dec_mean_kj = mean(facts.drone_consumed_j) / 1000.0;
  m.bto_mean = mean(facts.bto_samples);
  m.bto_samples = facts.bto_samples.size();
  m.blocks_committed = facts.blocks_committed;
  m.blocks_voided = facts.blocks_voided;
  m.packets_dropped = facts.packets_dropped;
  m.messages_lost = facts.messages_lost;
  return m;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_header() {
  return "seed,mode,n_uav,M,S_DT,adr,tbd_mean_s,dec_mean_kj,bto_mean,blocks_committed,blocks_voided,packets_dropped";
}

std::string csv_row(const MetricsRecord& m) {
  std::string s;
  s += std::to_string(m.seed) + ',';
  s += std::string(to_string(m.mode)) + ',';
  s += std::to_string(m.n_uav) + ',';
  s += format_number(m.malicious_fraction) + ',';
  s += std::to_string(m.data_tx_size) + ',';
  s += (m.adr ? format_number(*m.adr) : std::string("na")) + ',';
  s += format_number(m.tbd_mean_s) + ',';
  s += format_number(m.dec_mean_kj) + ',';
  s += format_number(m.bto_mean) + ',';
  s += std::to_string(m.blocks_committed) + ',';
  s += std::to_string(m.blocks_voided) + ',';
  s += std::to_string(m.packets_dropped);
  return s;
}

}  // namespace proact::sim

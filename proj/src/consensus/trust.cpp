#include "proact/consensus/trust.hpp"

#include <cmath>
#include <stdexcept>

namespace proact::consensus {

void TrustParams::validate() const {
  if (!(m_sub_s > 0) || !(t_tn_s > 0)) throw std::invalid_argument("T_TN and m_sub must be positive");
  const double ratio = t_tn_s / m_sub_s;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 || std::round(ratio) < 1)
    throw std::invalid_argument("T_TN must be an integer multiple of m_sub");
  if (th_tn < 0 || th_m < 0) throw std::invalid_argument("trust thresholds must be non-negative");
}

int TrustParams::subperiods_per_window() const { return static_cast<int>(std::lround(t_tn_s / m_sub_s)); }

double TrustWeights::points(TrustEvent e) const {
  switch (e) {
    case TrustEvent::ValidBlockParticipation:
    case TrustEvent::ValidForward: return legitimate;
    case TrustEvent::InvalidBlock:
    case TrustEvent::FalseAck:
    case TrustEvent::MaliciousIncident: return malicious;
  }
  return 0;
}

TrustRecord::TrustRecord(double m_sub_s, double start_s)
    : m_sub_s_(m_sub_s), first_(static_cast<std::int64_t>(std::floor(start_s / m_sub_s + 1e-9))) {}

TrustRecord TrustRecord::from_totals(const std::vector<double>& totals, double m_sub_s) {
  TrustRecord r(m_sub_s, 0);
  for (std::size_t i = 0; i < totals.size(); ++i) r.totals_[static_cast<std::int64_t>(i)] = totals[i];
  return r;
}

std::int64_t TrustRecord::subperiod_at(double t_s) const {
  return static_cast<std::int64_t>(std::floor(t_s / m_sub_s_ + 1e-9));
}

void TrustRecord::add(double points, double now_s) { totals_[subperiod_at(now_s)] += points; }

double TrustRecord::total(std::int64_t subperiod) const {
  auto it = totals_.find(subperiod);
  return it == totals_.end() ? 0.0 : it->second;
}

bool poat_eligible(const TrustRecord& record, const TrustParams& params, double now_s) {
  const int n = params.subperiods_per_window();
  const std::int64_t current = record.subperiod_at(now_s);
  const std::int64_t begin = current - n;
  if (n <= 0 || begin < record.first_subperiod()) return false;
  double sum = 0;
  for (std::int64_t k = begin; k < current; ++k) {
    const double t = record.total(k);
    if (!(t > params.th_m)) return false;
    sum += t;
  }
  return sum > params.th_tn;
}

int compute_th_ca(int max_tn, int n_ca) {
  if (n_ca <= 0) throw std::invalid_argument("N_CA must be at least 1");
  return std::max(1, max_tn / n_ca);
}

}  // namespace proact::consensus

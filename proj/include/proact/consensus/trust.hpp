#pragma once

// PoAT trust accounting: points per subperiod of length m_sub, eligibility
// over the last full T_TN window.

#include <cstdint>
#include <map>
#include <vector>

#include "proact/wire/types.hpp"

namespace proact::consensus {

using wire::NodeId;

struct TrustParams {
  double t_tn_s = 600;
  double m_sub_s = 60;
  double th_tn = 300;
  double th_m = 10;

  /// Throws std::invalid_argument if T_TN is not a positive multiple of
  /// m_sub or a threshold is negative.
  void validate() const;
  int subperiods_per_window() const;
};

enum class TrustEvent : std::uint8_t { ValidBlockParticipation, ValidForward, InvalidBlock, FalseAck, MaliciousIncident };

struct TrustWeights {
  double legitimate = 1;
  double malicious = -10;

  double points(TrustEvent e) const;
};

class TrustRecord {
 public:
  /// `start_s` is when the record began; earlier subperiods count as
  /// missing history.
  explicit TrustRecord(double m_sub_s = 60, double start_s = 0);

  /// Record with given totals for subperiods 0..n-1.
  static TrustRecord from_totals(const std::vector<double>& totals, double m_sub_s);

  void add(double points, double now_s);
  void add(TrustEvent e, double now_s, const TrustWeights& w = {}) { add(w.points(e), now_s); }

  std::int64_t subperiod_at(double t_s) const;
  std::int64_t first_subperiod() const { return first_; }
  double total(std::int64_t subperiod) const;
  double m_sub_s() const { return m_sub_s_; }

 private:
  double m_sub_s_;
  std::int64_t first_;
  std::map<std::int64_t, double> totals_;
};

/// Over the last T_TN / m_sub complete subperiods before `now_s`: true iff
/// the window total exceeds TH_TN and every subperiod exceeds TH_m. False
/// when the record does not cover a full window.
bool poat_eligible(const TrustRecord& record, const TrustParams& params, double now_s);

/// TH_CA = Max_TN / N_CA by integer division, at least 1. Throws
/// std::invalid_argument for n_ca = 0.
int compute_th_ca(int max_tn, int n_ca);

}  // namespace proact::consensus

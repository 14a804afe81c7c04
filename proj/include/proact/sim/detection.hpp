#pragma once

// GCS-side false-data detection. A claimed site is refuted when another
// report that arrived at the same GCS within W_detect was taken within
// R_detect of the claimed location and does not list the site.

#include <deque>

#include "proact/sim/config.hpp"
#include "proact/sim/workload.hpp"

namespace proact::sim {

struct ReceivedReport {
  wire::TxKey key;
  DataReport report;
  std::uint64_t arrival_us = 0;
};

class FalseDataDetector {
 public:
  explicit FalseDataDetector(const DetectionParams& params) : params_(params) {}

  /// Every report that reaches the GCS, in arrival order.
  void record(const ReceivedReport& r);

  /// True when some other recorded report refutes one of the subject's
  /// claims. Call once arrival + W_detect has passed.
  bool refuted(const ReceivedReport& subject) const;

  /// Drops reports too old to matter for anything arriving at or after
  /// `now_us`.
  void prune(std::uint64_t now_us);

  std::size_t held() const noexcept { return reports_.size(); }

 private:
  bool refutes(const ReceivedReport& witness, const SiteClaim& claim) const;

  DetectionParams params_;
  std::deque<ReceivedReport> reports_;
};

}  // namespace proact::sim

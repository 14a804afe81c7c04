#include "proact/sim/detection.hpp"

#include <algorithm>

#include "proact/sim/engine.hpp"

namespace proact::sim {

void FalseDataDetector::record(const ReceivedReport& r) { reports_.push_back(r); }

bool FalseDataDetector::refutes(const ReceivedReport& witness, const SiteClaim& claim) const {
  if (distance(witness.report.pos, claim.pos) > params_.r_detect_m) return false;
  return std::none_of(witness.report.observed.begin(), witness.report.observed.end(),
                      [&](const SiteClaim& c) { return c.site == claim.site; });
}

bool FalseDataDetector::refuted(const ReceivedReport& subject) const {
  const std::uint64_t w = to_us(params_.w_detect_s);
  const std::uint64_t lo = subject.arrival_us > w ? subject.arrival_us - w : 0;
  const std::uint64_t hi = subject.arrival_us + w;
  for (const auto& claim : subject.report.observed) {
    for (const auto& r : reports_) {
      if (r.arrival_us < lo || r.arrival_us > hi) continue;
      if (r.key.creator == subject.key.creator) continue;
      if (refutes(r, claim)) return true;
    }
  }
  return false;
}

void FalseDataDetector::prune(std::uint64_t now_us) {
  const std::uint64_t keep = 2 * to_us(params_.w_detect_s);
  while (!reports_.empty() && reports_.front().arrival_us + keep < now_us) reports_.pop_front();
}

}  // namespace proact::sim

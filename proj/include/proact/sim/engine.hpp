#pragma once

// Single-threaded discrete-event core. Events fire in (time, sequence)
// order; the sequence number is the scheduling order, so equal-time events
// run first-scheduled-first.

#include <cstdint>
#include <functional>
#include <ostream>
#include <queue>
#include <string>
#include <vector>

#include "proact/wire/types.hpp"

namespace proact::sim {

using wire::NodeId;

struct SimEvent {
  std::uint64_t fire_time_us = 0;
  std::uint64_t seq = 0;
  NodeId target;
  std::function<void()> action;
};

class EventQueue {
 public:
  /// Throws std::logic_error when `at_us` is in the past.
  void schedule(std::uint64_t at_us, NodeId target, std::function<void()> action);
  void schedule_in(double delay_s, NodeId target, std::function<void()> action);

  /// Runs events with fire time <= `until_us`; the clock ends at `until_us`.
  void run_until(std::uint64_t until_us);
  bool step();

  std::uint64_t now_us() const noexcept { return now_us_; }
  double now_s() const noexcept { return static_cast<double>(now_us_) * 1e-6; }
  std::uint64_t processed() const noexcept { return processed_; }
  std::size_t pending() const noexcept { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      return a.fire_time_us != b.fire_time_us ? a.fire_time_us > b.fire_time_us : a.seq > b.seq;
    }
  };
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
  std::uint64_t now_us_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t processed_ = 0;
};

std::uint64_t to_us(double seconds);

/// One line per event: time_us agent kind detail. Disabled when no stream
/// is attached.
class EventLog {
 public:
  EventLog() = default;
  explicit EventLog(std::ostream* out) : out_(out) {}
  bool enabled() const noexcept { return out_ != nullptr; }
  void write(std::uint64_t time_us, NodeId agent, const char* kind, const std::string& detail);

 private:
  std::ostream* out_ = nullptr;
};

}  // namespace proact::sim

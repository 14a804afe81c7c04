#include "proact/sim/engine.hpp"

#include <cmath>
#include <stdexcept>

namespace proact::sim {

std::uint64_t to_us(double seconds) {
  if (!(seconds >= 0)) throw std::logic_error("negative simulated duration");
  return static_cast<std::uint64_t>(std::llround(seconds * 1e6));
}

void EventQueue::schedule(std::uint64_t at_us, NodeId target, std::function<void()> action) {
  if (at_us < now_us_) throw std::logic_error("event scheduled in the past");
  heap_.push(SimEvent{at_us, next_seq_++, target, std::move(action)});
}

void EventQueue::schedule_in(double delay_s, NodeId target, std::function<void()> action) {
  schedule(now_us_ + to_us(delay_s), target, std::move(action));
}

bool EventQueue::step() {
  if (heap_.empty()) return false;
  // The heap top is const; move the action out before popping.
  SimEvent ev = std::move(const_cast<SimEvent&>(heap_.top()));
  heap_.pop();
  now_us_ = ev.fire_time_us;
  ++processed_;
  ev.action();
  return true;
}

void EventQueue::run_until(std::uint64_t until_us) {
  while (!heap_.empty() && heap_.top().fire_time_us <= until_us) step();
  if (until_us > now_us_) now_us_ = until_us;
}

void EventLog::write(std::uint64_t time_us, NodeId agent, const char* kind, const std::string& detail) {
  if (!out_) return;
  *out_ << time_us << ' ' << agent.value << ' ' << kind << ' ' << detail << '\n';
}

}  // namespace proact::sim

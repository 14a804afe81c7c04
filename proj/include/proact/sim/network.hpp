#pragma once

// Store-and-forward message transport over FIFO byte-queue channels.
//
// A message is cut into MTU packets. At each hop the packets are offered to
// the channel queue; packets that would push the backlog past queue_limit
// are dropped, accepted packets drain at the channel bandwidth and may
// still be lost at random. Missing packets are retransmitted after
// timeout * 2^attempt. Unreliable channels give up after max_retransmits;
// reliable ones keep retrying. The message moves to the next hop once every
// packet has crossed the current one.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "proact/sim/config.hpp"
#include "proact/sim/engine.hpp"

namespace proact::sim {

class Channel {
 public:
  Channel(LinkClass cls, const LinkParams& params, std::string name)
      : class_(cls), params_(params), name_(std::move(name)) {}

  struct Offer {
    std::size_t accepted = 0;
    std::size_t accepted_bytes = 0;
    /// Serialization end of the last accepted packet.
    double done_s = 0;
  };

  /// Offers `count` packets (every one `packet_bytes` except a final one of
  /// `last_bytes`) at time now_s.
  Offer offer(double now_s, std::size_t count, std::size_t packet_bytes, std::size_t last_bytes);

  std::size_t backlog_bytes(double now_s) const;
  LinkClass link_class() const noexcept { return class_; }
  const LinkParams& params() const noexcept { return params_; }
  const std::string& name() const noexcept { return name_; }
  std::uint64_t bytes_carried() const noexcept { return bytes_carried_; }

 private:
  LinkClass class_;
  LinkParams params_;
  std::string name_;
  double busy_until_s_ = 0;
  std::uint64_t bytes_carried_ = 0;
};

struct NetworkCounters {
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_delivered = 0;
  std::uint64_t messages_lost = 0;
  std::uint64_t packets_sent = 0;
  std::uint64_t packets_dropped_queue = 0;
  std::uint64_t packets_lost_random = 0;
  std::uint64_t retransmissions = 0;

  std::uint64_t packets_dropped() const { return packets_dropped_queue + packets_lost_random; }
};

struct SendCallbacks {
  /// Delivery at the far end of the path.
  std::function<void()> delivered;
  /// Given up after the last retransmission.
  std::function<void()> lost;
  /// Bytes put on the air at a hop, retransmissions included.
  std::function<void(std::size_t hop, std::size_t bytes)> transmitted;
};

class Network {
 public:
  Network(EventQueue& queue, const NetworkParams& params, std::uint64_t seed)
      : queue_(queue), params_(params), seed_(seed) {}

  /// Sends `bytes` along `path` (non-empty). `target` labels the delivery
  /// event. Returns the message id.
  std::uint64_t send(std::vector<Channel*> path, std::size_t bytes, NodeId target, SendCallbacks cb);

  const NetworkCounters& counters() const noexcept { return counters_; }
  const NetworkParams& params() const noexcept { return params_; }

 private:
  struct Transfer;
  void attempt_hop(const std::shared_ptr<Transfer>& t);
  bool random_loss(std::uint64_t msg, std::size_t hop, int attempt, std::size_t packet, double rate) const;

  EventQueue& queue_;
  NetworkParams params_;
  std::uint64_t seed_;
  std::uint64_t next_msg_ = 1;
  NetworkCounters counters_;
};

}  // namespace proact::sim

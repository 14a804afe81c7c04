#include "proact/sim/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace proact::sim {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::size_t Channel::backlog_bytes(double now_s) const {
  if (busy_until_s_ <= now_s) return 0;
  return static_cast<std::size_t>(std::ceil((busy_until_s_ - now_s) * params_.bandwidth_Bps));
}

Channel::Offer Channel::offer(double now_s, std::size_t count, std::size_t packet_bytes, std::size_t last_bytes) {
  Offer o;
  double busy = std::max(busy_until_s_, now_s);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t size = i + 1 == count ? last_bytes : packet_bytes;
    // The backlog is rebuilt from a time, so allow for rounding when it sits
    // exactly at the limit.
    const double backlog = (busy - now_s) * params_.bandwidth_Bps;
    if (backlog + static_cast<double>(size) > static_cast<double>(params_.queue_limit_bytes) + 1e-3) break;
    busy += static_cast<double>(size) / params_.bandwidth_Bps;
    ++o.accepted;
    o.accepted_bytes += size;
  }
  busy_until_s_ = busy;
  bytes_carried_ += o.accepted_bytes;
  o.done_s = busy;
  return o;
}

struct Network::Transfer {
  std::uint64_t id = 0;
  std::vector<Channel*> path;
  std::size_t bytes = 0;
  std::size_t packets = 0;
  NodeId target;
  SendCallbacks cb;

  std::size_t hop = 0;
  std::size_t remaining = 0;  // packets still to cross this hop
  int attempt = 0;
  double hop_done_s = 0;
};

bool Network::random_loss(std::uint64_t msg, std::size_t hop, int attempt, std::size_t packet, double rate) const {
  if (rate <= 0) return false;
  std::uint64_t h = mix(seed_ ^ mix(msg));
  h = mix(h ^ (static_cast<std::uint64_t>(hop) << 48) ^ (static_cast<std::uint64_t>(attempt) << 40) ^ packet);
  return static_cast<double>(h >> 11) * 0x1.0p-53 < rate;
}

std::uint64_t Network::send(std::vector<Channel*> path, std::size_t bytes, NodeId target, SendCallbacks cb) {
  if (path.empty()) throw std::invalid_argument("empty network path");
  auto t = std::make_shared<Transfer>();
  t->id = next_msg_++;
  t->path = std::move(path);
  t->bytes = std::max<std::size_t>(bytes, 1);
  t->packets = (t->bytes + params_.mtu_bytes - 1) / params_.mtu_bytes;
  t->target = target;
  t->cb = std::move(cb);
  t->remaining = t->packets;
  ++counters_.messages_sent;
  attempt_hop(t);
  return t->id;
}

void Network::attempt_hop(const std::shared_ptr<Transfer>& t) {
  Channel& ch = *t->path[t->hop];
  const LinkParams& lp = ch.params();
  const double now_s = queue_.now_s();
  const std::size_t mtu = params_.mtu_bytes;
  const std::size_t last = t->bytes - (t->packets - 1) * mtu;

  // The packets still missing are the tail of the message.
  const std::size_t first_index = t->packets - t->remaining;
  const Channel::Offer o = ch.offer(now_s, t->remaining, mtu, last);
  counters_.packets_sent += o.accepted;
  counters_.packets_dropped_queue += t->remaining - o.accepted;
  if (t->attempt > 0) counters_.retransmissions += t->remaining;
  if (o.accepted_bytes > 0 && t->cb.transmitted) t->cb.transmitted(t->hop, o.accepted_bytes);

  std::size_t crossed = 0;
  for (std::size_t i = 0; i < o.accepted; ++i) {
    if (random_loss(t->id, t->hop, t->attempt, first_index + i, lp.loss_rate))
      ++counters_.packets_lost_random;
    else
      ++crossed;
  }
  if (o.accepted > 0) t->hop_done_s = std::max(t->hop_done_s, o.done_s + lp.latency_s);
  t->remaining -= crossed;

  if (t->remaining == 0) {
    const std::uint64_t at = std::max(queue_.now_us(), to_us(t->hop_done_s));
    ++t->hop;
    t->attempt = 0;
    t->remaining = t->packets;
    t->hop_done_s = 0;
    if (t->hop == t->path.size()) {
      queue_.schedule(at, t->target, [this, t] {
        ++counters_.messages_delivered;
        if (t->cb.delivered) t->cb.delivered();
      });
    } else {
      queue_.schedule(at, t->target, [this, t] { attempt_hop(t); });
    }
    return;
  }

  if (!lp.reliable && t->attempt >= params_.max_retransmits) {
    ++counters_.messages_lost;
    if (t->cb.lost) queue_.schedule(queue_.now_us(), t->target, [t] { t->cb.lost(); });
    return;
  }
  const double backoff = params_.retransmit_timeout_s * std::ldexp(1.0, std::min(t->attempt, 16));
  ++t->attempt;
  queue_.schedule_in(backoff, t->target, [this, t] { attempt_hop(t); });
}

}  // namespace proact::sim

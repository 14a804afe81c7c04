#include "doctest.h"
#include "proact/sim/network.hpp"

using namespace proact::sim;

namespace {

LinkParams link(double latency, double bw, std::size_t queue, double loss = 0, bool reliable = false) {
  LinkParams p;
  p.latency_s = latency;
  p.bandwidth_Bps = bw;
  p.queue_limit_bytes = queue;
  p.loss_rate = loss;
  p.reliable = reliable;
  return p;
}

NetworkParams net_params() {
  NetworkParams p;
  p.mtu_bytes = 1500;
  p.max_retransmits = 3;
  p.retransmit_timeout_s = 0.05;
  return p;
}

}  // namespace

TEST_CASE("one hop: serialization plus latency") {
  EventQueue q;
  Network net(q, net_params(), 1);
  Channel ch(LinkClass::UavGcs, link(0.01, 1'000'000, 1 << 20), "c");
  std::uint64_t at = 0;
  net.send({&ch}, 3000, {}, {[&] { at = q.now_us(); }, {}, {}});
  q.run_until(1'000'000);
  // 3000 B at 1 MB/s is 3 ms, plus 10 ms.
  CHECK(at == 13'000);
  CHECK(net.counters().packets_sent == 2);
  CHECK(net.counters().messages_delivered == 1);
}

TEST_CASE("two hops store and forward") {
  EventQueue q;
  Network net(q, net_params(), 1);
  Channel a(LinkClass::UavGcs, link(0.01, 1'000'000, 1 << 20), "a");
  Channel b(LinkClass::GcsCa, link(0.002, 500'000, 1 << 20), "b");
  std::uint64_t at = 0;
  net.send({&a, &b}, 1000, {}, {[&] { at = q.now_us(); }, {}, {}});
  q.run_until(1'000'000);
  // (1 ms + 10 ms) then (2 ms + 2 ms).
  CHECK(at == 15'000);
}

TEST_CASE("back-to-back messages queue behind each other") {
  EventQueue q;
  Network net(q, net_params(), 1);
  Channel ch(LinkClass::UavGcs, link(0.0, 1'000'000, 1 << 20), "c");
  std::uint64_t first = 0, second = 0;
  net.send({&ch}, 1500, {}, {[&] { first = q.now_us(); }, {}, {}});
  net.send({&ch}, 1500, {}, {[&] { second = q.now_us(); }, {}, {}});
  CHECK(ch.backlog_bytes(0) == 3000);
  q.run_until(1'000'000);
  CHECK(first == 1500);
  CHECK(second == 3000);
}

TEST_CASE("queue overflow drops the tail and retransmits it") {
  EventQueue q;
  Network net(q, net_params(), 1);
  // Room for two packets; a four-packet message needs a second attempt.
  Channel ch(LinkClass::UavGcs, link(0.0, 1'000'000, 3000), "c");
  std::uint64_t at = 0;
  net.send({&ch}, 6000, {}, {[&] { at = q.now_us(); }, {}, {}});
  q.run_until(1'000'000);
  CHECK(net.counters().packets_dropped_queue == 2);
  CHECK(net.counters().retransmissions == 2);
  // Retry at 50 ms, queue empty by then: 3 ms for the last two packets.
  CHECK(at == 53'000);
}

TEST_CASE("unreliable link gives up after max retransmits") {
  EventQueue q;
  auto p = net_params();
  p.max_retransmits = 2;
  Network net(q, p, 1);
  Channel ch(LinkClass::UavUav, link(0.0, 1'000'000, 100), "c");  // below one packet
  bool delivered = false, lost = false;
  std::size_t on_air = 0;
  net.send({&ch}, 500, {}, {[&] { delivered = true; }, [&] { lost = true; }, [&](std::size_t, std::size_t n) {
                              on_air += n;
                            }});
  q.run_until(10'000'000);
  CHECK_FALSE(delivered);
  CHECK(lost);
  CHECK(on_air == 0);
  CHECK(net.counters().messages_lost == 1);
  CHECK(net.counters().packets_dropped_queue == 3);
}

TEST_CASE("random loss is retried and counted, reliable links always deliver") {
  EventQueue q;
  Network net(q, net_params(), 7);
  Channel ch(LinkClass::GcsCa, link(0.001, 10'000'000, 1 << 24, 0.3, true), "c");
  int delivered = 0;
  std::size_t on_air = 0;
  for (int i = 0; i < 200; ++i)
    net.send({&ch}, 4000, {}, {[&] { ++delivered; }, {}, [&](std::size_t, std::size_t n) { on_air += n; }});
  q.run_until(100'000'000);
  CHECK(delivered == 200);
  const auto& c = net.counters();
  CHECK(c.packets_lost_random > 0);
  CHECK(c.retransmissions > 0);
  CHECK(c.messages_lost == 0);
  // 3 packets per message; every loss costs one extra packet on the air.
  CHECK(c.packets_sent == 600 + c.packets_lost_random);
  CHECK(on_air > 200u * 4000u);
}

TEST_CASE("loss pattern depends only on the seed") {
  auto run = [](std::uint64_t seed) {
    EventQueue q;
    Network net(q, net_params(), seed);
    Channel ch(LinkClass::UavGcs, link(0.001, 1'000'000, 1 << 24, 0.2), "c");
    for (int i = 0; i < 100; ++i) net.send({&ch}, 3000, {}, {});
    q.run_until(100'000'000);
    return net.counters().packets_lost_random;
  };
  CHECK(run(3) == run(3));
  CHECK(run(3) != run(4));
}

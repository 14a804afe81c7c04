#include "proact/sim/topology.hpp"

#include <algorithm>
#include <deque>
#include <numbers>

namespace proact::sim {

Vec2 uniform_in_disc(Vec2 center, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double a = 2 * std::numbers::pi * u(rng);
  return {center.x + r * std::cos(a), center.y + r * std::sin(a)};
}

Topology place_topology(const ScenarioConfig& cfg, std::mt19937_64& rng) {
  const auto& tp = cfg.topology;
  const double gcs_range = cfg.network[LinkClass::UavGcs].range_m;
  const double uav_range = cfg.network[LinkClass::UavUav].range_m;
  std::uniform_real_distribution<double> jitter(-tp.gcs_jitter_m, tp.gcs_jitter_m);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Topology t;
  const int n_gcs = cfg.n_gcs();
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_gcs))));
  for (int g = 0; g < n_gcs; ++g) {
    const Vec2 cell{(g % cols + 0.5) * tp.gcs_spacing_m, (g / cols + 0.5) * tp.gcs_spacing_m};
    t.gcs.push_back({cell.x + jitter(rng), cell.y + jitter(rng)});
    t.gcs_ca.push_back(g / cfg.gcs_per_ca);
  }
  for (int c = 0; c < cfg.n_ca; ++c) {
    Vec2 sum;
    for (int k = 0; k < cfg.gcs_per_ca; ++k) {
      sum.x += t.gcs[static_cast<std::size_t>(c * cfg.gcs_per_ca + k)].x;
      sum.y += t.gcs[static_cast<std::size_t>(c * cfg.gcs_per_ca + k)].y;
    }
    t.ca.push_back({sum.x / cfg.gcs_per_ca, sum.y / cfg.gcs_per_ca});
  }

  std::uint32_t site_id = 1;
  for (int g = 0; g < n_gcs; ++g) {
    const Vec2 base = t.gcs[static_cast<std::size_t>(g)];
    const double phase = 2 * std::numbers::pi * unit(rng);
    for (int k = 0; k < cfg.uavn_per_gcs; ++k) {
      const double a = phase + 2 * std::numbers::pi * k / cfg.uavn_per_gcs;
      t.uavn.push_back({g, {base.x + tp.uavn_offset_m * std::cos(a), base.y + tp.uavn_offset_m * std::sin(a)},
                        tp.uavn_disc_radius_m});
    }
    for (int s = 0; s < tp.sites_per_gcs; ++s) {
      const auto& disc = t.uavn[static_cast<std::size_t>(g * cfg.uavn_per_gcs + s % cfg.uavn_per_gcs)];
      t.sites.push_back({site_id++, uniform_in_disc(disc.center, disc.radius, rng)});
    }
  }

  for (std::size_t u = 0; u < t.uavn.size(); ++u) {
    for (int d = 0; d < cfg.uav_per_uavn; ++d) {
      t.drone_uavn.push_back(static_cast<int>(u));
      t.drone_start.push_back(uniform_in_disc(t.uavn[u].center, t.uavn[u].radius, rng));
    }
  }

  const auto hops = hops_to_gcs(t.drone_start, t.gcs, uav_range, gcs_range);
  for (std::size_t d = 0; d < hops.size(); ++d)
    if (hops[d] < 0)
      throw TopologyError("infeasible placement: drone " + std::to_string(d) + " has no path to any GCS");
  // Waypoints stay inside the disc, so a disc wholly within its GCS's range
  // keeps every drone connected for the whole run.
  for (const auto& disc : t.uavn) {
    if (distance(disc.center, t.gcs[static_cast<std::size_t>(disc.gcs)]) + disc.radius > gcs_range)
      throw TopologyError("infeasible placement: UAVN disc extends beyond its GCS's range");
  }
  return t;
}

std::vector<int> hops_to_gcs(const std::vector<Vec2>& drones, const std::vector<Vec2>& gcs, double uav_range,
                             double gcs_range) {
  std::vector<int> hops(drones.size(), -1);
  std::deque<std::size_t> frontier;
  for (std::size_t d = 0; d < drones.size(); ++d) {
    for (const auto& g : gcs) {
      if (distance(drones[d], g) <= gcs_range) {
        hops[d] = 1;
        frontier.push_back(d);
        break;
      }
    }
  }
  while (!frontier.empty()) {
    const std::size_t d = frontier.front();
    frontier.pop_front();
    for (std::size_t e = 0; e < drones.size(); ++e) {
      if (hops[e] >= 0 || distance(drones[d], drones[e]) > uav_range) continue;
      hops[e] = hops[d] + 1;
      frontier.push_back(e);
    }
  }
  return hops;
}

WaypointMobility::WaypointMobility(Vec2 start, Vec2 center, double radius, double v_min, double v_max,
                                   std::uint64_t seed)
    : center_(center), radius_(radius), v_min_(v_min), v_max_(v_max), rng_(seed) {
  legs_.push_back({0, 0, start, start});
}

void WaypointMobility::extend() {
  const Leg& prev = legs_.back();
  const Vec2 to = uniform_in_disc(center_, radius_, rng_);
  std::uniform_real_distribution<double> speed(v_min_, v_max_);
  const double v = speed(rng_);
  const double dt = std::max(distance(prev.to, to) / v, 1e-3);
  legs_.push_back({prev.t1, prev.t1 + dt, prev.to, to});
}

Vec2 WaypointMobility::position(double t) {
  while (legs_[cursor_].t1 < t) {
    if (cursor_ + 1 == legs_.size()) extend();
    ++cursor_;
  }
  const Leg& l = legs_[cursor_];
  if (l.t1 <= l.t0) return l.to;
  const double f = std::clamp((t - l.t0) / (l.t1 - l.t0), 0.0, 1.0);
  return {l.from.x + f * (l.to.x - l.from.x), l.from.y + f * (l.to.y - l.from.y)};
}

}  // namespace proact::sim

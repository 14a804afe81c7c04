#pragma once

// Synthetic placement: GCSs on a jittered grid, UAVN discs around their
// GCS, drones on seeded random waypoints inside their disc, and event sites
// (fires, persons) for the sensing ground truth.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "proact/sim/config.hpp"

namespace proact::sim {

struct Vec2 {
  double x = 0;
  double y = 0;
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Site {
  std::uint32_t id = 0;
  Vec2 pos;
};

struct UavnPlacement {
  int gcs = 0;
  Vec2 center;
  double radius = 0;
};

struct Topology {
  std::vector<Vec2> ca;
  std::vector<Vec2> gcs;
  std::vector<int> gcs_ca;
  std::vector<UavnPlacement> uavn;
  std::vector<int> drone_uavn;
  std::vector<Vec2> drone_start;
  std::vector<Site> sites;
};

/// Throws TopologyError when some drone has no wireless path to any GCS.
Topology place_topology(const ScenarioConfig& cfg, std::mt19937_64& rng);

/// Fewest wireless hops from each drone to any GCS: drone-drone edges within
/// uav_range, drone-GCS edges within gcs_range. -1 when unreachable.
std::vector<int> hops_to_gcs(const std::vector<Vec2>& drones, const std::vector<Vec2>& gcs, double uav_range,
                             double gcs_range);

Vec2 uniform_in_disc(Vec2 center, double radius, std::mt19937_64& rng);

/// Random waypoint motion inside a disc. Queries must be made with
/// non-decreasing times; legs are drawn lazily from the drone's own stream.
class WaypointMobility {
 public:
  struct Leg {
    double t0 = 0;
    double t1 = 0;
    Vec2 from;
    Vec2 to;
  };

  WaypointMobility(Vec2 start, Vec2 center, double radius, double v_min, double v_max, std::uint64_t seed);

  Vec2 position(double t);
  const std::vector<Leg>& legs() const noexcept { return legs_; }

 private:
  void extend();

  Vec2 center_;
  double radius_;
  double v_min_;
  double v_max_;
  std::mt19937_64 rng_;
  std::vector<Leg> legs_;
  std::size_t cursor_ = 0;
};

}  // namespace proact::sim

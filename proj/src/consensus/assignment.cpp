#include "proact/consensus/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace proact::consensus {

std::map<NodeId, std::vector<NodeId>> assign_gcs_to_tgcs(const std::vector<NodeId>& gcc_ids,
                                                         const std::vector<NodeId>& tgcs_ids, std::mt19937_64& rng) {
  if (tgcs_ids.empty()) throw std::invalid_argument("no TGCS to assign GCCs to");
  const std::set<NodeId> miners(tgcs_ids.begin(), tgcs_ids.end());
  for (NodeId g : gcc_ids)
    if (miners.count(g)) throw std::invalid_argument("GCC and TGCS lists overlap");

  const std::size_t n_gcc = gcc_ids.size(), n_tgcs = tgcs_ids.size();
  const std::size_t lo = n_gcc / n_tgcs;
  const std::size_t hi = lo + (n_gcc % n_tgcs ? 1 : 0);

  std::map<NodeId, std::vector<NodeId>> out;
  std::size_t next = 0;
  for (std::size_t i = 0; i < n_tgcs; ++i) {
    const std::size_t remaining = n_gcc - next;
    std::size_t take = remaining;
    if (i + 1 < n_tgcs) {
      const std::size_t others = n_tgcs - i - 1;
      const bool hi_ok = remaining >= hi && remaining - hi >= lo * others;
      const bool lo_ok = remaining >= lo && remaining - lo <= hi * others;
      if (hi_ok && lo_ok)
        take = std::uniform_int_distribution<int>(0, 1)(rng) ? hi : lo;
      else
        take = hi_ok ? hi : lo;
    }
    auto& list = out[tgcs_ids[i]];
    list.assign(gcc_ids.begin() + static_cast<std::ptrdiff_t>(next),
                gcc_ids.begin() + static_cast<std::ptrdiff_t>(next + take));
    next += take;
  }
  return out;
}

std::size_t bo_index(std::size_t n_ca, double now_s, double t_bo_s) {
  if (n_ca == 0) throw std::invalid_argument("no CA to act as BO");
  const auto epoch = static_cast<std::uint64_t>(std::floor(std::max(0.0, now_s) / t_bo_s));
  return static_cast<std::size_t>(epoch % n_ca);
}

NodeId rotate_bo(const std::vector<NodeId>& ca_list, double now_s, double t_bo_s) {
  return ca_list[bo_index(ca_list.size(), now_s, t_bo_s)];
}

}  // namespace proact::consensus

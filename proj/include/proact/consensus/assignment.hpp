#pragma once

#include <map>
#include <random>
#include <vector>

#include "proact/wire/types.hpp"

namespace proact::consensus {

using wire::NodeId;

/// Splits the GCCs (non-miner GCSs) over the TGCSs. Each TGCS but the last
/// takes floor or ceil of N_GCC / N_TGCS, chosen by the rng among the
/// choices that still leave the remaining TGCSs a floor-or-ceil share; the
/// last takes the rest. GCCs are handed out in the given order. Throws
/// std::invalid_argument for an empty TGCS list or overlapping lists.
std::map<NodeId, std::vector<NodeId>> assign_gcs_to_tgcs(const std::vector<NodeId>& gcc_ids,
                                                         const std::vector<NodeId>& tgcs_ids, std::mt19937_64& rng);

/// Acting BO: ca_list[floor(now / T_BO) mod |ca_list|].
NodeId rotate_bo(const std::vector<NodeId>& ca_list, double now_s, double t_bo_s);
std::size_t bo_index(std::size_t n_ca, double now_s, double t_bo_s);

}  // namespace proact::consensus

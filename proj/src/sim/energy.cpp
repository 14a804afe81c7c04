#include "proact/sim/energy.hpp"

#include <algorithm>

namespace proact::sim {

void EnergyState::crypto_op(const crypto::CryptoSuite& suite, std::size_t bytes) {
  const auto& c = params_->cost(suite);
  drain((c.per_op_uj + c.per_byte_uj * static_cast<double>(bytes)) * 1e-6);
}

void EnergyState::drain(double joules) {
  if (joules <= 0) return;
  remaining_j_ = std::max(0.0, remaining_j_ - joules);
}

}  // namespace proact::sim

#pragma once

#include <cstddef>

#include "proact/sim/config.hpp"

namespace proact::sim {

/// Drone battery. Charges are floored at zero; an empty battery deactivates
/// the drone.
class EnergyState {
 public:
  explicit EnergyState(const EnergyParams& params) : params_(&params), remaining_j_(params.initial_j) {}

  void sent(std::size_t bytes) { drain(params_->e_tx_uj_per_byte * 1e-6 * static_cast<double>(bytes)); }
  void received(std::size_t bytes) { drain(params_->e_rx_uj_per_byte * 1e-6 * static_cast<double>(bytes)); }
  /// One crypto operation over `bytes` with the given suite.
  void crypto_op(const crypto::CryptoSuite& suite, std::size_t bytes);
  void flight(double seconds) { drain(params_->p_flight_w * seconds); }

  double remaining_j() const noexcept { return remaining_j_; }
  double consumed_j() const noexcept { return params_->initial_j - remaining_j_; }
  bool active() const noexcept { return remaining_j_ > 0; }

 private:
  void drain(double joules);

  const EnergyParams* params_;
  double remaining_j_;
};

}  // namespace proact::sim

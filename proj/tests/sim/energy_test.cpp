#include "doctest.h"
#include "proact/crypto/suite.hpp"
#include "proact/sim/energy.hpp"

using namespace proact;
using namespace proact::sim;

TEST_CASE("an hour of flight at 250 W is 900 kJ") {
  EnergyParams p;
  EnergyState e(p);
  e.flight(3600);
  CHECK(e.consumed_j() == doctest::Approx(900'000));
  CHECK(e.active());
}

TEST_CASE("radio and crypto charges") {
  EnergyParams p;
  EnergyState e(p);
  e.sent(1000);      // 2 mJ
  e.received(1000);  // 1 mJ
  CHECK(e.consumed_j() == doctest::Approx(0.003));

  const auto& s1 = crypto::suite_for(wire::SecurityClass::S1);
  EnergyState f(p);
  f.crypto_op(s1, 1000);
  const auto& c = p.cost(s1);
  CHECK(f.consumed_j() == doctest::Approx((c.per_op_uj + 1000 * c.per_byte_uj) * 1e-6));
}

TEST_CASE("lighter suites cost less per operation") {
  EnergyParams p;
  const auto& s1 = crypto::suite_for(wire::SecurityClass::S1);
  const auto& c1 = crypto::suite_for(wire::SecurityClass::S2_C1);
  const auto& c2 = crypto::suite_for(wire::SecurityClass::S2_C2);
  auto cost = [&](const crypto::CryptoSuite& s) {
    EnergyState e(p);
    e.crypto_op(s, 500);
    return e.consumed_j();
  };
  CHECK(cost(c1) < cost(c2));
  CHECK(cost(c2) < cost(s1));
}

TEST_CASE("battery floors at zero and deactivates") {
  EnergyParams p;
  p.initial_j = 100;
  EnergyState e(p);
  e.flight(0.2);
  CHECK(e.remaining_j() == doctest::Approx(50));
  e.flight(10);
  CHECK(e.remaining_j() == 0);
  CHECK_FALSE(e.active());
  CHECK(e.consumed_j() == doctest::Approx(100));
}

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "proact/crypto/kernels.hpp"

namespace proact::crypto::kernels {

namespace {

bool cpu_supports(bool need_avx2) {
#if defined(PROACT_HAVE_AVX2_KERNEL) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return (!need_avx2 || __builtin_cpu_supports("avx2")) && __builtin_cpu_supports("bmi2");
#else
  (void)need_avx2;
  return false;
#endif
}

Kind initial_kind() {
  if (const char* forced = std::getenv("PROACT_SPONGENT_KERNEL")) {
    const std::string f(forced);
    if (f == "scalar") return Kind::Scalar;
    if (f == "avx2" && available(Kind::Avx2)) return Kind::Avx2;
  }
  return available(Kind::Bitsliced) ? Kind::Bitsliced : Kind::Scalar;
}

std::atomic<Kind>& selected() {
  static std::atomic<Kind> kind{initial_kind()};
  return kind;
}

}  // namespace

bool available(Kind kind) {
  switch (kind) {
    case Kind::Scalar: return true;
    case Kind::Avx2: {
      static const bool ok = cpu_supports(true);
      return ok;
    }
    case Kind::Bitsliced: {
      static const bool ok = cpu_supports(false);
      return ok;
    }
  }
  return false;
}

Kind active() { return selected().load(std::memory_order_relaxed); }

PermuteFn active_fn() {
#if defined(PROACT_HAVE_AVX2_KERNEL)
  switch (active()) {
    case Kind::Avx2: return &permute_avx2;
    case Kind::Bitsliced: return &permute_bitsliced;
    case Kind::Scalar: break;
  }
#endif
  return &permute_scalar;
}

void select(Kind kind) {
  if (!available(kind)) throw std::runtime_error("SPONGENT kernel not available: " + std::string(name(kind)));
  selected().store(kind, std::memory_order_relaxed);
}

std::string_view name(Kind kind) {
  switch (kind) {
    case Kind::Scalar: return "scalar";
    case Kind::Avx2: return "avx2";
    case Kind::Bitsliced: return "bitsliced";
  }
  return "?";
}

}  // namespace proact::crypto::kernels

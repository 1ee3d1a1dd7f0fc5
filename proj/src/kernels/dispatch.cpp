#include <atomic>
#include <cstdlib>
#include <cstring>

#include "tlbs/kernels.hpp"
#include "tlbs/scenario.hpp"

namespace tlbs::kernels {

namespace {

// -1: not forced.
std::atomic<int> g_forced{-1};

Isa detect() {
  if (const char* env = std::getenv("TLBS_KERNEL"); env && std::strcmp(env, "scalar") == 0) {
    return Isa::kScalar;
  }
  return avx2_available() ? Isa::kAvx2 : Isa::kScalar;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  static const Isa detected = detect();
  return detected;
}

void force_isa(Isa isa) {
  if (isa == Isa::kAvx2 && !avx2_available()) {
    throw DomainError("AVX2 kernels requested on a CPU without AVX2");
  }
  g_forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() { g_forced.store(-1, std::memory_order_relaxed); }

ScanResult scan_charging(const ChargingQuery& q, const CandidateSoA& cells) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_isa() == Isa::kAvx2 && integer_exponent(q.alpha) && integer_exponent(q.beta)) {
    return scan_charging_avx2(q, cells);
  }
#endif
  return scan_charging_scalar(q, cells);
}

void within_range(double cx, double cy, double radius_m, const CandidateSoA& cells,
                  std::span<std::uint8_t> out) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_isa() == Isa::kAvx2) {
    within_range_avx2(cx, cy, radius_m, cells, out);
    return;
  }
#endif
  within_range_scalar(cx, cy, radius_m, cells, out);
}

}  // namespace tlbs::kernels

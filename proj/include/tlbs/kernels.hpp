#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Data-parallel inner loops of the solver. Every kernel has a scalar reference
// and, on x86-64, an AVX2 variant that produces bit-identical results (no FMA
// contraction, identical multiplication order). The public entry points pick
// a variant at runtime.

namespace tlbs::kernels {

enum class Isa { kScalar, kAvx2 };

/// Best ISA supported by the running CPU, unless overridden by
/// force_isa() or the TLBS_KERNEL=scalar environment variable.
Isa active_isa();
bool avx2_available();
/// Pins the dispatch; passing kAvx2 on a CPU without AVX2 is a DomainError.
void force_isa(Isa isa);
void reset_isa();

/// Candidate cells as a structure of arrays, ordered by ascending cell id.
struct CandidateSoA {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::int32_t> id;

  std::size_t size() const { return id.size(); }
  void push_back(double cx, double cy, std::int32_t cid) {
    x.push_back(cx);
    y.push_back(cy);
    id.push_back(cid);
  }
};

/// Charging-mode scan. A candidate `a` qualifies when
///   dist(cur, a) <= reach_m,
///   dist(a, target) < target_dist_m            (strict progress), and
///   dist(cur, a) + dist(a, target) <= target_dist_m + detour_slack_m.
/// Its score is tau_row[id]^alpha * dist(cur, a)^beta * bonus[id]; the
/// highest score wins and ties go to the earliest candidate.
struct ChargingQuery {
  double cur_x = 0.0;
  double cur_y = 0.0;
  double target_x = 0.0;
  double target_y = 0.0;
  double target_dist_m = 0.0;
  double reach_m = 0.0;
  double detour_slack_m = 0.0;
  const double* tau_row = nullptr;  // indexed by cell id
  const double* bonus = nullptr;    // indexed by cell id
  double alpha = 2.0;
  double beta = 2.0;
};

struct ScanResult {
  std::int32_t id = -1;  // -1 when nothing qualifies
  double score = -1.0;
};

/// Integer exponent in [1, 16] when `e` is one, else 0.
int integer_exponent(double e);
/// x^e, by repeated multiplication for integer exponents and std::pow
/// otherwise. Shared by every scoring path so argmax decisions agree.
double weight_pow(double x, double e);

double charging_score(double tau, double d, double bonus, double alpha, double beta);

ScanResult scan_charging(const ChargingQuery& q, const CandidateSoA& cells);
ScanResult scan_charging_scalar(const ChargingQuery& q, const CandidateSoA& cells);
#if defined(__x86_64__) || defined(_M_X64)
/// Requires integer alpha and beta.
ScanResult scan_charging_avx2(const ChargingQuery& q, const CandidateSoA& cells);
#endif

/// out[i] = 1 when dist((cx, cy), cells[i]) <= radius_m, else 0.
void within_range(double cx, double cy, double radius_m, const CandidateSoA& cells,
                  std::span<std::uint8_t> out);
void within_range_scalar(double cx, double cy, double radius_m, const CandidateSoA& cells,
                         std::span<std::uint8_t> out);
#if defined(__x86_64__) || defined(_M_X64)
void within_range_avx2(double cx, double cy, double radius_m, const CandidateSoA& cells,
                       std::span<std::uint8_t> out);
#endif

}  // namespace tlbs::kernels

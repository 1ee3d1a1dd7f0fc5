#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "tlbs/kernels.hpp"
#include "tlbs/scenario.hpp"

namespace tlbs::kernels {

namespace {

__attribute__((target("avx2"))) inline __m256d ipow4(__m256d x, int k) {
  __m256d r = x;
  for (int i = 1; i < k; ++i) r = _mm256_mul_pd(r, x);
  return r;
}

}  // namespace

__attribute__((target("avx2"))) ScanResult scan_charging_avx2(const ChargingQuery& q,
                                                              const CandidateSoA& cells) {
  const int ka = integer_exponent(q.alpha);
  const int kb = integer_exponent(q.beta);
  if (ka == 0 || kb == 0) throw DomainError("AVX2 charging scan needs integer exponents");

  const std::size_t n = cells.size();
  const std::size_t body = n & ~std::size_t{3};

  const __m256d cur_x = _mm256_set1_pd(q.cur_x);
  const __m256d cur_y = _mm256_set1_pd(q.cur_y);
  const __m256d tgt_x = _mm256_set1_pd(q.target_x);
  const __m256d tgt_y = _mm256_set1_pd(q.target_y);
  const __m256d reach = _mm256_set1_pd(q.reach_m);
  const __m256d tdist = _mm256_set1_pd(q.target_dist_m);
  const __m256d ellipse = _mm256_set1_pd(q.target_dist_m + q.detour_slack_m);
  const __m256d minus_one = _mm256_set1_pd(-1.0);

  __m256d best_score = minus_one;
  __m256d best_pos = _mm256_set1_pd(-1.0);
  __m256d pos = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d four = _mm256_set1_pd(4.0);

  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d x = _mm256_loadu_pd(cells.x.data() + i);
    const __m256d y = _mm256_loadu_pd(cells.y.data() + i);
    const __m256d dxc = _mm256_sub_pd(x, cur_x);
    const __m256d dyc = _mm256_sub_pd(y, cur_y);
    const __m256d d =
        _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dxc, dxc), _mm256_mul_pd(dyc, dyc)));
    const __m256d dxt = _mm256_sub_pd(x, tgt_x);
    const __m256d dyt = _mm256_sub_pd(y, tgt_y);
    const __m256d dt =
        _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dxt, dxt), _mm256_mul_pd(dyt, dyt)));

    __m256d ok = _mm256_cmp_pd(d, reach, _CMP_LE_OQ);
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(dt, tdist, _CMP_LT_OQ));
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(_mm256_add_pd(d, dt), ellipse, _CMP_LE_OQ));

    if (_mm256_movemask_pd(ok) != 0) {
      const __m128i ids =
          _mm_loadu_si128(reinterpret_cast<const __m128i*>(cells.id.data() + i));
      const __m256d tau = _mm256_i32gather_pd(q.tau_row, ids, 8);
      const __m256d bonus = _mm256_i32gather_pd(q.bonus, ids, 8);
      __m256d s = _mm256_mul_pd(_mm256_mul_pd(ipow4(tau, ka), ipow4(d, kb)), bonus);
      s = _mm256_blendv_pd(minus_one, s, ok);
      const __m256d better = _mm256_cmp_pd(s, best_score, _CMP_GT_OQ);
      best_score = _mm256_blendv_pd(best_score, s, better);
      best_pos = _mm256_blendv_pd(best_pos, pos, better);
    }
    pos = _mm256_add_pd(pos, four);
  }

  alignas(32) double lane_score[4];
  alignas(32) double lane_pos[4];
  _mm256_store_pd(lane_score, best_score);
  _mm256_store_pd(lane_pos, best_pos);

  double top = -1.0;
  long top_pos = -1;
  for (int l = 0; l < 4; ++l) {
    if (lane_pos[l] < 0.0) continue;
    const long p = static_cast<long>(lane_pos[l]);
    if (lane_score[l] > top || (lane_score[l] == top && p < top_pos)) {
      top = lane_score[l];
      top_pos = p;
    }
  }

  // Tail in scalar form; positions are larger than any body position, so a
  // strict comparison keeps the earliest winner.
  for (std::size_t i = body; i < n; ++i) {
    const double dxc = cells.x[i] - q.cur_x;
    const double dyc = cells.y[i] - q.cur_y;
    const double d = std::sqrt(dxc * dxc + dyc * dyc);
    const double dxt = cells.x[i] - q.target_x;
    const double dyt = cells.y[i] - q.target_y;
    const double dt = std::sqrt(dxt * dxt + dyt * dyt);
    if (!(d <= q.reach_m) || !(dt < q.target_dist_m) ||
        !(d + dt <= q.target_dist_m + q.detour_slack_m)) {
      continue;
    }
    const std::int32_t id = cells.id[i];
    const double s = charging_score(q.tau_row[id], d, q.bonus[id], q.alpha, q.beta);
    if (s > top) {
      top = s;
      top_pos = static_cast<long>(i);
    }
  }

  ScanResult result;
  if (top_pos >= 0) {
    result.id = cells.id[static_cast<std::size_t>(top_pos)];
    result.score = top;
  }
  return result;
}

__attribute__((target("avx2"))) void within_range_avx2(double cx, double cy, double radius_m,
                                                       const CandidateSoA& cells,
                                                       std::span<std::uint8_t> out) {
  if (out.size() < cells.size()) throw DomainError("within_range output too small");
  const std::size_t n = cells.size();
  const std::size_t body = n & ~std::size_t{3};
  const __m256d vx = _mm256_set1_pd(cx);
  const __m256d vy = _mm256_set1_pd(cy);
  const __m256d r = _mm256_set1_pd(radius_m);
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(cells.x.data() + i), vx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(cells.y.data() + i), vy);
    const __m256d d =
        _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d, r, _CMP_LE_OQ));
    for (int l = 0; l < 4; ++l) out[i + l] = static_cast<std::uint8_t>((mask >> l) & 1);
  }
  for (std::size_t i = body; i < n; ++i) {
    const double dx = cells.x[i] - cx;
    const double dy = cells.y[i] - cy;
    out[i] = std::sqrt(dx * dx + dy * dy) <= radius_m ? 1 : 0;
  }
}

}  // namespace tlbs::kernels

#endif

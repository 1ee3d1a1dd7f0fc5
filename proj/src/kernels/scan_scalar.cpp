#include <cmath>

#include "tlbs/kernels.hpp"
#include "tlbs/scenario.hpp"

namespace tlbs::kernels {

int integer_exponent(double e) {
  if (e >= 1.0 && e <= 16.0 && e == std::floor(e)) return static_cast<int>(e);
  return 0;
}

double weight_pow(double x, double e) {
  const int k = integer_exponent(e);
  if (k == 0) return std::pow(x, e);
  double r = x;
  for (int i = 1; i < k; ++i) r *= x;
  return r;
}

double charging_score(double tau, double d, double bonus, double alpha, double beta) {
  return weight_pow(tau, alpha) * weight_pow(d, beta) * bonus;
}

ScanResult scan_charging_scalar(const ChargingQuery& q, const CandidateSoA& cells) {
  ScanResult best;
  const std::size_t n = cells.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double dxc = cells.x[i] - q.cur_x;
    const double dyc = cells.y[i] - q.cur_y;
    const double d = std::sqrt(dxc * dxc + dyc * dyc);
    const double dxt = cells.x[i] - q.target_x;
    const double dyt = cells.y[i] - q.target_y;
    const double dt = std::sqrt(dxt * dxt + dyt * dyt);
    if (!(d <= q.reach_m)) continue;
    if (!(dt < q.target_dist_m)) continue;
    if (!(d + dt <= q.target_dist_m + q.detour_slack_m)) continue;
    const std::int32_t id = cells.id[i];
    const double s = charging_score(q.tau_row[id], d, q.bonus[id], q.alpha, q.beta);
    if (s > best.score) {
      best.score = s;
      best.id = id;
    }
  }
  return best;
}

void within_range_scalar(double cx, double cy, double radius_m, const CandidateSoA& cells,
                         std::span<std::uint8_t> out) {
  if (out.size() < cells.size()) throw DomainError("within_range output too small");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double dx = cells.x[i] - cx;
    const double dy = cells.y[i] - cy;
    out[i] = std::sqrt(dx * dx + dy * dy) <= radius_m ? 1 : 0;
  }
}

}  // namespace tlbs::kernels

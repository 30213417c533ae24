#include "offload/metrics.hpp"

#include "offload/errors.hpp"
#include "offload/vec.hpp"

#include <algorithm>
#include <cmath>

namespace offload {

namespace {
// Below this a finite-difference speed is treated as standing still.
constexpr double kMovingSpeed = 1e-6;
} // namespace

SummaryStats summarize(std::span<const MetricsRecord> records) {
  if (records.empty())
    throw EmptyRun();

  SummaryStats s;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto &r : records) {
    const double a = std::abs(rad_to_deg(r.alpha));
    s.max_alpha_deg = std::max(s.max_alpha_deg, a);
    sum += a;
    sum_sq += a * a;
    s.max_horizontal_force = std::max(s.max_horizontal_force, std::hypot(r.fx, r.fy));
  }
  const auto n = static_cast<double>(records.size());
  s.mean_alpha_deg = sum / n;
  s.rms_alpha_deg = std::sqrt(sum_sq / n);

  double path = 0.0;
  double moving_time = 0.0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto &a = records[i - 1];
    const auto &b = records[i];
    const double dt = b.t - a.t;
    const double ds = norm(Vec3{b.target_x - a.target_x, b.target_y - a.target_y,
                                b.target_z - a.target_z});
    if (dt > 0.0 && ds / dt > kMovingSpeed) {
      path += ds;
      moving_time += dt;
    }
  }
  s.mean_target_speed = moving_time > 0.0 ? path / moving_time : 0.0;
  s.duration = records.back().t - records.front().t;
  s.pass_angle = s.max_alpha_deg <= kMaxAlphaDeg;
  s.pass_force = s.max_horizontal_force <= kMaxHorizontalForce;
  return s;
}

} // namespace offload

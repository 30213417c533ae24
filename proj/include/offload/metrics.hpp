#pragma once

#include <span>

namespace offload {

/// Pass limits on the offload force direction and horizontal share.
inline constexpr double kMaxAlphaDeg = 1.0;
inline constexpr double kMaxHorizontalForce = 0.5; // [N]

struct MetricsRecord {
  double t = 0.0;
  double target_x = 0.0, target_y = 0.0, target_z = 0.0;
  double tracker_x = 0.0, tracker_y = 0.0;
  double theta_true = 0.0, phi_true = 0.0; ///< [rad]
  double theta_meas = 0.0, phi_meas = 0.0; ///< [rad]
  double belt_a = 0.0, belt_b = 0.0;
  double tension = 0.0;
  double fx = 0.0, fy = 0.0, fz = 0.0;
  double alpha = 0.0; ///< [rad]
  double cmd_vx = 0.0, cmd_vy = 0.0;
  bool saturated = false;

  friend bool operator==(const MetricsRecord &, const MetricsRecord &) = default;
};

struct SummaryStats {
  double max_alpha_deg = 0.0;
  double mean_alpha_deg = 0.0;
  double rms_alpha_deg = 0.0;
  double max_horizontal_force = 0.0; ///< [N]
  double mean_target_speed = 0.0;    ///< over samples where the target moves [m/s]
  bool pass_angle = true;
  bool pass_force = true;
  double duration = 0.0;

  bool passed() const { return pass_angle && pass_force; }
};

/// Throws EmptyRun for an empty span.
SummaryStats summarize(std::span<const MetricsRecord> records);

} // namespace offload

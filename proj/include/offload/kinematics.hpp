#pragma once

#include <cstdint>

namespace offload {

/// Tilt of the counterweight cable from vertical, as seen at the upper gimbal.
///
/// World frame is right-handed (x forward, y left, z up). With the horizontal
/// offset d of the attachment point relative to the tracker pulley,
/// sin(theta) = -d.x / length and sin(phi) = d.y / length.
struct CableTilt {
  double theta = 0.0;  ///< pitch, x-z plane [rad]
  double phi = 0.0;    ///< roll, y-z plane [rad]
  double length = 0.0; ///< pulley to attachment [m]
};

struct PlanarDisplacement {
  double dx = 0.0;
  double dy = 0.0;
};

/// Belt feeds of the left (a) and right (b) CoreXY motors [m].
struct BeltFeeds {
  double da = 0.0;
  double db = 0.0;
};

struct StepperGeometry {
  double feed_per_step = 12.5e-6; ///< [m/step]: 40 mm/rev, 200 steps x 16 microsteps
  double max_step_rate = 20000.0; ///< [steps/s]
};

struct QuantizedFeed {
  std::int64_t steps = 0;
  double residual = 0.0;
};

void validate(const CableTilt &t);
void validate(const StepperGeometry &g);

/// Tracker displacement that brings the pulley back above the attachment point.
PlanarDisplacement tilt_to_displacement(const CableTilt &t);

BeltFeeds displacement_to_feeds(PlanarDisplacement d);
PlanarDisplacement feeds_to_displacement(BeltFeeds f);

/// Whole steps toward zero; the remainder goes back to the caller so that
/// repeated commands never lose feed.
QuantizedFeed quantize_feed(double feed, const StepperGeometry &g);

/// Largest whole step count a motor may issue within `dt` seconds.
std::int64_t max_steps_in(double dt, const StepperGeometry &g);

} // namespace offload

#include "offload/controller.hpp"

#include "offload/errors.hpp"

#include <algorithm>
#include <cmath>

namespace offload {

void validate(const PidGains &g) {
  if (!(g.kp >= 0.0) || !(g.ki >= 0.0) || !(g.kd >= 0.0))
    throw ConfigError("PID gains must be non-negative");
  if (!(g.integral_limit > 0.0))
    throw ConfigError("integral limit must be positive");
  if (!(g.deadband >= 0.0))
    throw ConfigError("deadband must be non-negative");
}

ControlOutput control_step(const EncoderReading &meas, double length, const PidGains &gains,
                           const ControllerState &cs, const StepperGeometry &g) {
  if (!(cs.dt_ctrl > 0.0))
    throw DomainError("control period must be positive");
  if (!(length > 0.0))
    throw DomainError("controller cable length must be positive");
  const double dt = cs.dt_ctrl;

  const double theta = std::abs(meas.theta_meas) < gains.deadband ? 0.0 : meas.theta_meas;
  const double phi = std::abs(meas.phi_meas) < gains.deadband ? 0.0 : meas.phi_meas;
  const PlanarDisplacement err = tilt_to_displacement({theta, phi, length});

  double dex = 0.0;
  double dey = 0.0;
  if (cs.has_prev) {
    dex = (err.dx - cs.prev_err_x) / dt;
    dey = (err.dy - cs.prev_err_y) / dt;
  }

  const double lim = gains.integral_limit;
  const double ix = std::clamp(cs.integral_x + err.dx * dt, -lim, lim);
  const double iy = std::clamp(cs.integral_y + err.dy * dt, -lim, lim);

  const double vx = gains.kp * err.dx + gains.ki * ix + gains.kd * dex;
  const double vy = gains.kp * err.dy + gains.ki * iy + gains.kd * dey;

  BeltFeeds feed = displacement_to_feeds({vx * dt, vy * dt});
  const double max_feed = static_cast<double>(max_steps_in(dt, g)) * g.feed_per_step;
  const double peak = std::max(std::abs(feed.da), std::abs(feed.db));
  const bool saturated = peak > max_feed;
  if (saturated) {
    const double scale = max_feed / peak;
    feed.da *= scale;
    feed.db *= scale;
  }

  ControlOutput out;
  out.feed = feed;
  const PlanarDisplacement moved = feeds_to_displacement(feed);
  out.cmd_velocity = {moved.dx / dt, moved.dy / dt};

  const QuantizedFeed qa = quantize_feed(feed.da + cs.residual_a, g);
  const QuantizedFeed qb = quantize_feed(feed.db + cs.residual_b, g);
  out.steps_a = qa.steps;
  out.steps_b = qb.steps;

  ControllerState &n = out.next;
  n = cs;
  if (!saturated) {
    n.integral_x = ix;
    n.integral_y = iy;
  }
  n.prev_err_x = err.dx;
  n.prev_err_y = err.dy;
  n.has_prev = true;
  n.residual_a = qa.residual;
  n.residual_b = qb.residual;
  n.saturated = saturated;
  return out;
}

} // namespace offload

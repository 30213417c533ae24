#pragma once

#include "offload/kinematics.hpp"
#include "offload/plant.hpp"

#include <cstdint>

namespace offload {

struct PidGains {
  double kp = 8.0;              ///< [1/s]
  double ki = 2.0;              ///< [1/s^2]
  double kd = 0.1;              ///< [-]
  double integral_limit = 0.05; ///< anti-windup clamp on each axis integral
  double deadband = 0.0;        ///< [rad]
};

void validate(const PidGains &g);

struct ControllerState {
  double integral_x = 0.0;
  double integral_y = 0.0;
  double prev_err_x = 0.0;
  double prev_err_y = 0.0;
  bool has_prev = false; ///< no derivative on the first tick
  double residual_a = 0.0;
  double residual_b = 0.0;
  double dt_ctrl = 0.01;
  bool saturated = false;
};

struct ControlOutput {
  std::int64_t steps_a = 0;
  std::int64_t steps_b = 0;
  BeltFeeds feed;  ///< commanded feed after rate limiting, before quantization
  Vec2 cmd_velocity; ///< tracker velocity actually commanded [m/s]
  ControllerState next;
};

/// One tick of the tracking loop.
///
/// The measured tilt is turned into a displacement error with the configured
/// cable length, PID on that error gives a tracker velocity, and the CoreXY map
/// turns the velocity over one tick into belt feeds. Feeds are scaled down
/// together when either belt would exceed the step rate (the integrator holds
/// while that happens), then quantized with the remainder carried forward.
ControlOutput control_step(const EncoderReading &meas, double length, const PidGains &gains,
                           const ControllerState &cs, const StepperGeometry &g);

} // namespace offload

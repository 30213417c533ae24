#pragma once

#include "offload/controller.hpp"
#include "offload/kinematics.hpp"
#include "offload/plant.hpp"
#include "offload/vec.hpp"

#include <variant>
#include <vector>

namespace offload {

struct Stationary {
  Vec3 position;
};

/// Straight horizontal push with a trapezoidal speed profile. When the
/// distance is shorter than the two ramps the profile degenerates to a
/// triangle with the same acceleration.
struct CartPush {
  Vec3 start;
  Vec2 direction{1.0, 0.0}; ///< unit, horizontal
  double speed = 0.04;
  double distance = 1.0;
  double ramp_time = 0.5;
};

/// Stop-and-go climb along the fall line of a slope. Each step eases in and
/// out over `step_duration`, then the target dwells.
struct SlopeClimb {
  Vec3 start;
  Vec2 heading{1.0, 0.0}; ///< unit, horizontal projection of the uphill direction
  double slope_angle = 0.0;
  double step_length = 0.05;
  double step_duration = 1.0;
  double dwell = 1.0;
  int n_steps = 0;
};

struct Waypoint {
  double t = 0.0;
  Vec3 position;
};

/// Piecewise-linear motion through timed waypoints; holds the ends outside.
struct Waypoints {
  std::vector<Waypoint> points;
};

class TrajectorySampler {
public:
  using Spec = std::variant<Stationary, CartPush, SlopeClimb, Waypoints>;

  TrajectorySampler() = default;
  explicit TrajectorySampler(Spec spec);

  const Spec &spec() const { return spec_; }

  /// Attachment-point position at time t. Throws TrajectoryOutOfRange for
  /// negative or non-finite t.
  Vec3 position(double t) const;

  /// Time after which the target no longer moves.
  double motion_end() const;

  /// Total path length of the prescribed motion.
  double path_length() const;

  /// Lowest attachment height reached over the motion.
  double min_z() const;

private:
  Spec spec_ = Stationary{};
};

TrajectorySampler stationary(Vec3 p);
TrajectorySampler cart_push(Vec3 start, Vec2 direction, double speed, double distance,
                            double ramp_time);
TrajectorySampler slope_climb(Vec3 start, Vec2 heading, double slope_angle, double step_length,
                              double step_duration, double dwell, int n_steps);
TrajectorySampler waypoints(std::vector<Waypoint> points);

struct ScenarioConfig {
  TrajectorySampler trajectory;
  PlantConfig plant;
  PidGains gains;
  StepperGeometry geometry;
  double duration = 30.0;
  double m_target = 20.0 / 9.80665;
  double g_sim = 0.0;
  double initial_theta = 0.0;
  double initial_phi = 0.0;
  /// Cable length the controller assumes. Zero means the initial l1.
  double controller_length = 0.0;
  /// Multiplies the controller's cable length; 1.2 models a 20 % overestimate.
  double controller_length_scale = 1.0;
};

/// Counterweight that leaves `g_sim` acting on a target of `m_target`.
double counterweight_for_gravity(double m_target, double g_sim, double g_earth);

/// Fills plant.m_cw from the target mass and simulated gravity, then checks
/// the scenario. Throws ConfigError.
void finalize(ScenarioConfig &s);
void validate(const ScenarioConfig &s);

} // namespace offload

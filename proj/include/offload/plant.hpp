#pragma once

#include "offload/kinematics.hpp"
#include "offload/vec.hpp"

#include <array>
#include <cstdint>
#include <random>

namespace offload {

class TrajectorySampler;

enum class TensionModel { QuasiStatic, Dynamic };

struct PlantConfig {
  double z_rail = 2.0;       ///< height of the tracker pulley plane [m]
  double m_cw = 20.0 / 9.80665; ///< counterweight mass [kg]
  double g_earth = 9.80665;
  double cable_total = 4.0;  ///< constant total cable length [m]
  TensionModel tension_model = TensionModel::QuasiStatic;
  double encoder_resolution = 2.0 * kPi / 4096.0; ///< [rad/count]
  double encoder_noise_sigma = 0.0;               ///< [rad]
  std::uint64_t noise_seed = 1;
};

void validate(const PlantConfig &c);

/// Physical truth of the rig at one instant. Time is an integer step count.
struct PlantState {
  std::int64_t step = 0;
  double t = 0.0;
  Vec3 p_target;  ///< cable attachment point on the target
  Vec2 p_tracker; ///< pulley x, y (z is always z_rail)
  double belt_a = 0.0;
  double belt_b = 0.0;
  double l1 = 0.0; ///< pulley to attachment
  double z_cw = 0.0;
  double tension = 0.0;
  std::array<double, 3> l1_hist{}; ///< l1 at the last three step boundaries, newest last
  int hist_count = 0;
  double hist_dt = 0.0;
};

struct OffloadForce {
  double fx = 0.0;
  double fy = 0.0;
  double fz = 0.0;
  double alpha = 0.0; ///< angle of the force from vertical [rad]

  double horizontal() const;
};

struct EncoderReading {
  double theta_meas = 0.0;
  double phi_meas = 0.0;
};

/// Builds the initial state with the cable tilted by (theta, phi) from vertical.
/// The pulley is offset from the target so that geometric_tilt reproduces the
/// requested tilt exactly.
PlantState make_initial_state(Vec3 p_target, double theta, double phi, const PlantConfig &c);

CableTilt geometric_tilt(const PlantState &s, const PlantConfig &c);

double compute_tension(const PlantState &s, const PlantConfig &c);

OffloadForce offload_force(const PlantState &s, const PlantConfig &c, double tension);

/// Executes whole motor steps. Throws StepRateExceeded when a motor is asked for
/// more steps than it can issue in `dt`.
PlantState apply_steps(PlantState s, std::int64_t steps_a, std::int64_t steps_b,
                       const StepperGeometry &g, const PlantConfig &c, double dt);

/// Moves the target to the trajectory position at the next step boundary.
PlantState advance_target(PlantState s, const TrajectorySampler &traj, const PlantConfig &c,
                          double dt);

/// Places the target at `p` as the sample of the next step boundary.
PlantState move_target(PlantState s, Vec3 p, const PlantConfig &c, double dt);

EncoderReading read_encoders(const PlantState &s, const PlantConfig &c, std::mt19937_64 &rng);

/// Counts of `resolution`, rounded half to even.
double quantize_angle(double angle, double resolution);

} // namespace offload

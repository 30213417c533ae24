#include "offload/plant.hpp"

#include "offload/errors.hpp"
#include "offload/scenarios.hpp"

#include <cmath>
#include <string>

namespace offload {

namespace {

Vec3 pulley(const PlantState &s, const PlantConfig &c) {
  return {s.p_tracker.x, s.p_tracker.y, c.z_rail};
}

// Recomputes everything that follows from the tracker and target positions.
void refresh(PlantState &s, const PlantConfig &c) {
  if (!(s.p_target.z < c.z_rail))
    throw DomainError("target reached the tracker rail plane");
  s.l1 = norm(pulley(s, c) - s.p_target);
  if (!(s.l1 < c.cable_total))
    throw DomainError("cable fully paid out on the target side");
  s.z_cw = c.z_rail - c.cable_total + s.l1;
  s.l1_hist[2] = s.l1;
  s.tension = compute_tension(s, c);
}

void push_history(PlantState &s) {
  s.l1_hist[0] = s.l1_hist[1];
  s.l1_hist[1] = s.l1_hist[2];
  if (s.hist_count < 3)
    ++s.hist_count;
}

} // namespace

double OffloadForce::horizontal() const { return std::hypot(fx, fy); }

void validate(const PlantConfig &c) {
  if (!(c.m_cw > 0.0))
    throw ConfigError("counterweight mass must be positive");
  if (!(c.g_earth > 0.0))
    throw ConfigError("g_earth must be positive");
  if (!(c.encoder_resolution > 0.0))
    throw ConfigError("encoder resolution must be positive");
  if (!(c.encoder_noise_sigma >= 0.0))
    throw ConfigError("encoder noise sigma must be non-negative");
  if (!(c.cable_total > 0.0))
    throw ConfigError("total cable length must be positive");
}

PlantState make_initial_state(Vec3 p_target, double theta, double phi, const PlantConfig &c) {
  const double height = c.z_rail - p_target.z;
  if (!(height > 0.0))
    throw DomainError("target must start below the rail plane");
  const double st = std::sin(theta);
  const double sp = std::sin(phi);
  const double vertical_share = 1.0 - st * st - sp * sp;
  if (!(vertical_share > 0.0))
    throw DomainError("initial tilt leaves no vertical cable component");
  const double l1 = height / std::sqrt(vertical_share);

  PlantState s;
  s.p_target = p_target;
  s.p_tracker = {p_target.x + st * l1, p_target.y - sp * l1};
  s.hist_count = 1;
  refresh(s, c);
  s.l1_hist = {s.l1, s.l1, s.l1};
  return s;
}

CableTilt geometric_tilt(const PlantState &s, const PlantConfig &c) {
  const Vec3 d = s.p_target - pulley(s, c);
  const double l1 = norm(d);
  if (!(l1 > 0.0))
    throw DomainError("cable length is zero; tilt undefined");
  return {std::asin(-d.x / l1), std::asin(d.y / l1), l1};
}

double compute_tension(const PlantState &s, const PlantConfig &c) {
  const double static_tension = c.m_cw * c.g_earth;
  if (c.tension_model == TensionModel::QuasiStatic || s.hist_count < 3 || !(s.hist_dt > 0.0))
    return static_tension;
  const auto &h = s.l1_hist;
  const double l1_ddot = (h[2] - 2.0 * h[1] + h[0]) / (s.hist_dt * s.hist_dt);
  return c.m_cw * (c.g_earth + l1_ddot);
}

OffloadForce offload_force(const PlantState &s, const PlantConfig &c, double tension) {
  const Vec3 d = pulley(s, c) - s.p_target;
  const double l1 = norm(d);
  if (!(l1 > 0.0))
    throw DomainError("cable length is zero; force direction undefined");
  OffloadForce f;
  f.fx = tension * d.x / l1;
  f.fy = tension * d.y / l1;
  f.fz = tension * d.z / l1;
  f.alpha = std::atan2(std::hypot(f.fx, f.fy), std::abs(f.fz));
  return f;
}

PlantState apply_steps(PlantState s, std::int64_t steps_a, std::int64_t steps_b,
                       const StepperGeometry &g, const PlantConfig &c, double dt) {
  const auto limit = static_cast<std::int64_t>(std::ceil(g.max_step_rate * dt - 1e-9));
  if (std::abs(steps_a) > limit || std::abs(steps_b) > limit)
    throw StepRateExceeded("step command (" + std::to_string(steps_a) + ", " +
                           std::to_string(steps_b) + ") exceeds " + std::to_string(limit) +
                           " steps per " + std::to_string(dt) + " s");
  if (steps_a == 0 && steps_b == 0)
    return s;
  const BeltFeeds feeds{static_cast<double>(steps_a) * g.feed_per_step,
                        static_cast<double>(steps_b) * g.feed_per_step};
  s.belt_a += feeds.da;
  s.belt_b += feeds.db;
  const PlanarDisplacement d = feeds_to_displacement(feeds);
  s.p_tracker.x += d.dx;
  s.p_tracker.y += d.dy;
  refresh(s, c);
  return s;
}

PlantState move_target(PlantState s, Vec3 p, const PlantConfig &c, double dt) {
  s.step += 1;
  s.t = static_cast<double>(s.step) * dt;
  s.hist_dt = dt;
  s.p_target = p;
  push_history(s);
  refresh(s, c);
  return s;
}

PlantState advance_target(PlantState s, const TrajectorySampler &traj, const PlantConfig &c,
                          double dt) {
  const double t_next = static_cast<double>(s.step + 1) * dt;
  return move_target(std::move(s), traj.position(t_next), c, dt);
}

double quantize_angle(double angle, double resolution) {
  // nearbyint honours the default round-half-to-even mode.
  return std::nearbyint(angle / resolution) * resolution;
}

EncoderReading read_encoders(const PlantState &s, const PlantConfig &c, std::mt19937_64 &rng) {
  const CableTilt tilt = geometric_tilt(s, c);
  double theta = tilt.theta;
  double phi = tilt.phi;
  if (c.encoder_noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, c.encoder_noise_sigma);
    theta += noise(rng);
    phi += noise(rng);
  }
  return {quantize_angle(theta, c.encoder_resolution), quantize_angle(phi, c.encoder_resolution)};
}

} // namespace offload

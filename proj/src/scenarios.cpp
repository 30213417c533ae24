#include "offload/scenarios.hpp"

#include "offload/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace offload {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

bool is_unit(Vec2 v) { return std::abs(std::hypot(v.x, v.y) - 1.0) < 1e-9; }

// Distance covered along the push line at time t (trapezoid or triangle profile).
double cart_progress(const CartPush &c, double t) {
  if (c.distance <= 0.0 || c.speed <= 0.0)
    return 0.0;
  if (c.ramp_time <= 0.0)
    return std::min(c.speed * t, c.distance);
  const double accel = c.speed / c.ramp_time;
  double v_peak = c.speed;
  double t_ramp = c.ramp_time;
  if (c.distance < c.speed * c.ramp_time) {
    v_peak = std::sqrt(c.distance * accel);
    t_ramp = v_peak / accel;
  }
  const double ramp_dist = 0.5 * v_peak * t_ramp;
  const double t_cruise = (c.distance - 2.0 * ramp_dist) / v_peak;
  const double t_end = 2.0 * t_ramp + t_cruise;
  if (t <= 0.0)
    return 0.0;
  if (t < t_ramp)
    return 0.5 * accel * t * t;
  if (t < t_ramp + t_cruise)
    return ramp_dist + v_peak * (t - t_ramp);
  if (t < t_end) {
    const double tr = t_end - t;
    return c.distance - 0.5 * accel * tr * tr;
  }
  return c.distance;
}

double cart_end(const CartPush &c) {
  if (c.distance <= 0.0 || c.speed <= 0.0)
    return 0.0;
  if (c.ramp_time <= 0.0)
    return c.distance / c.speed;
  if (c.distance < c.speed * c.ramp_time)
    return 2.0 * std::sqrt(c.distance * c.ramp_time / c.speed);
  return c.distance / c.speed + c.ramp_time;
}

double slope_progress(const SlopeClimb &s, double t) {
  if (s.n_steps <= 0 || t <= 0.0)
    return 0.0;
  const double period = s.step_duration + s.dwell;
  const double k = std::floor(t / period);
  if (k >= s.n_steps)
    return s.n_steps * s.step_length;
  const double within = t - k * period;
  double frac = 1.0;
  if (within < s.step_duration) {
    const double u = within / s.step_duration;
    frac = 0.5 * (1.0 - std::cos(std::numbers::pi * u));
  }
  return (k + frac) * s.step_length;
}

Vec3 slope_point(const SlopeClimb &s, double along) {
  const double h = along * std::cos(s.slope_angle);
  return {s.start.x + h * s.heading.x, s.start.y + h * s.heading.y,
          s.start.z + along * std::sin(s.slope_angle)};
}

Vec3 lerp(Vec3 a, Vec3 b, double u) { return a + u * (b - a); }

} // namespace

TrajectorySampler::TrajectorySampler(Spec spec) : spec_(std::move(spec)) {}

Vec3 TrajectorySampler::position(double t) const {
  if (!std::isfinite(t) || t < 0.0)
    throw TrajectoryOutOfRange("trajectory sampled at t = " + std::to_string(t));
  return std::visit(
      overloaded{
          [](const Stationary &s) { return s.position; },
          [t](const CartPush &c) {
            const double d = cart_progress(c, t);
            return Vec3{c.start.x + d * c.direction.x, c.start.y + d * c.direction.y, c.start.z};
          },
          [t](const SlopeClimb &s) { return slope_point(s, slope_progress(s, t)); },
          [t](const Waypoints &w) {
            const auto &p = w.points;
            if (t <= p.front().t)
              return p.front().position;
            if (t >= p.back().t)
              return p.back().position;
            auto hi = std::upper_bound(p.begin(), p.end(), t,
                                       [](double tv, const Waypoint &wp) { return tv < wp.t; });
            auto lo = hi - 1;
            return lerp(lo->position, hi->position, (t - lo->t) / (hi->t - lo->t));
          },
      },
      spec_);
}

double TrajectorySampler::motion_end() const {
  return std::visit(overloaded{
                        [](const Stationary &) { return 0.0; },
                        [](const CartPush &c) { return cart_end(c); },
                        [](const SlopeClimb &s) {
                          if (s.n_steps <= 0)
                            return 0.0;
                          return s.n_steps * (s.step_duration + s.dwell) - s.dwell;
                        },
                        [](const Waypoints &w) { return w.points.back().t; },
                    },
                    spec_);
}

double TrajectorySampler::path_length() const {
  return std::visit(overloaded{
                        [](const Stationary &) { return 0.0; },
                        [](const CartPush &c) { return c.speed > 0.0 ? c.distance : 0.0; },
                        [](const SlopeClimb &s) { return std::max(0, s.n_steps) * s.step_length; },
                        [](const Waypoints &w) {
                          double total = 0.0;
                          for (std::size_t i = 1; i < w.points.size(); ++i)
                            total += norm(w.points[i].position - w.points[i - 1].position);
                          return total;
                        },
                    },
                    spec_);
}

double TrajectorySampler::min_z() const {
  return std::visit(overloaded{
                        [](const Stationary &s) { return s.position.z; },
                        [](const CartPush &c) { return c.start.z; },
                        [](const SlopeClimb &s) { return s.start.z; },
                        [](const Waypoints &w) {
                          double z = w.points.front().position.z;
                          for (const auto &p : w.points)
                            z = std::min(z, p.position.z);
                          return z;
                        },
                    },
                    spec_);
}

TrajectorySampler stationary(Vec3 p) { return TrajectorySampler(Stationary{p}); }

TrajectorySampler cart_push(Vec3 start, Vec2 direction, double speed, double distance,
                            double ramp_time) {
  if (!is_unit(direction))
    throw ConfigError("cart push direction must be a horizontal unit vector");
  if (!(speed >= 0.0) || !(distance >= 0.0) || !(ramp_time >= 0.0))
    throw ConfigError("cart push speed, distance and ramp time must be non-negative");
  if (distance == 0.0 || speed == 0.0)
    return stationary(start);
  return TrajectorySampler(CartPush{start, direction, speed, distance, ramp_time});
}

TrajectorySampler slope_climb(Vec3 start, Vec2 heading, double slope_angle, double step_length,
                              double step_duration, double dwell, int n_steps) {
  if (!is_unit(heading))
    throw ConfigError("slope heading must be a horizontal unit vector");
  if (!(slope_angle >= 0.0) || !(slope_angle < std::numbers::pi / 2))
    throw ConfigError("slope angle must be in [0, 90) deg");
  if (!(step_length > 0.0) || !(step_duration > 0.0) || !(dwell >= 0.0) || n_steps < 0)
    throw ConfigError("invalid slope climb gait");
  if (n_steps == 0)
    return stationary(start);
  return TrajectorySampler(
      SlopeClimb{start, heading, slope_angle, step_length, step_duration, dwell, n_steps});
}

TrajectorySampler waypoints(std::vector<Waypoint> points) {
  if (points.empty())
    throw ConfigError("waypoint trajectory needs at least one point");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].t > points[i - 1].t))
      throw ConfigError("waypoint times must be strictly increasing");
  if (points.front().t < 0.0)
    throw ConfigError("waypoint times must be non-negative");
  return TrajectorySampler(Waypoints{std::move(points)});
}

double counterweight_for_gravity(double m_target, double g_sim, double g_earth) {
  if (!(m_target > 0.0))
    throw DomainError("target mass must be positive");
  if (!(g_earth > 0.0) || !(g_sim >= 0.0) || !(g_sim <= g_earth))
    throw DomainError("simulated gravity must lie in [0, g_earth]");
  return m_target * (g_earth - g_sim) / g_earth;
}

void validate(const ScenarioConfig &s) {
  validate(s.plant);
  validate(s.gains);
  validate(s.geometry);
  if (!(s.duration > 0.0))
    throw ConfigError("duration must be positive");
  if (!(s.g_sim >= 0.0) || !(s.g_sim <= s.plant.g_earth))
    throw ConfigError("simulated gravity must lie in [0, g_earth]");
  if (!(s.controller_length >= 0.0) || !(s.controller_length_scale > 0.0))
    throw ConfigError("controller cable length must be positive");
  const double drop = s.plant.z_rail - s.trajectory.min_z();
  if (!(s.plant.cable_total > drop))
    throw ConfigError("total cable length does not reach the lowest target position");
}

void finalize(ScenarioConfig &s) {
  try {
    s.plant.m_cw = counterweight_for_gravity(s.m_target, s.g_sim, s.plant.g_earth);
  } catch (const DomainError &e) {
    throw ConfigError(e.what());
  }
  validate(s);
}

} // namespace offload

#include "offload/kinematics.hpp"

#include "offload/errors.hpp"

#include <cmath>
#include <numbers>

namespace offload {

void validate(const CableTilt &t) {
  if (!(t.length > 0.0) || !std::isfinite(t.length))
    throw DomainError("cable length must be positive");
  if (!(std::abs(t.theta) < std::numbers::pi / 2) || !(std::abs(t.phi) < std::numbers::pi / 2))
    throw DomainError("cable tilt must be within (-90, 90) deg");
  const double st = std::sin(t.theta);
  const double sp = std::sin(t.phi);
  // The projections come from one unit direction; allow rounding at the rim.
  if (st * st + sp * sp > 1.0 + 1e-12)
    throw DomainError("tilt projections exceed a unit cable direction");
}

void validate(const StepperGeometry &g) {
  if (!(g.feed_per_step > 0.0) || !(g.max_step_rate > 0.0))
    throw DomainError("stepper geometry must be strictly positive");
}

PlanarDisplacement tilt_to_displacement(const CableTilt &t) {
  validate(t);
  return {-t.length * std::sin(t.theta), t.length * std::sin(t.phi)};
}

BeltFeeds displacement_to_feeds(PlanarDisplacement d) {
  return {d.dx - d.dy, -d.dx - d.dy};
}

PlanarDisplacement feeds_to_displacement(BeltFeeds f) {
  return {(f.da - f.db) / 2.0, -(f.da + f.db) / 2.0};
}

QuantizedFeed quantize_feed(double feed, const StepperGeometry &g) {
  const double steps = std::trunc(feed / g.feed_per_step);
  double residual = feed - steps * g.feed_per_step;
  auto n = static_cast<std::int64_t>(steps);
  // feed / step can round across an integer; pull the remainder back inside one step.
  if (residual >= g.feed_per_step || (feed < 0.0 && residual > 0.0)) {
    ++n;
    residual = feed - static_cast<double>(n) * g.feed_per_step;
  } else if (residual <= -g.feed_per_step || (feed > 0.0 && residual < 0.0)) {
    --n;
    residual = feed - static_cast<double>(n) * g.feed_per_step;
  }
  return {n, residual};
}

std::int64_t max_steps_in(double dt, const StepperGeometry &g) {
  return static_cast<std::int64_t>(std::floor(g.max_step_rate * dt + 1e-9));
}

} // namespace offload

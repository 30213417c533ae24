#include "offload/errors.hpp"
#include "offload/plant.hpp"
#include "offload/scenarios.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace offload;

namespace {

PlantConfig rig() {
  PlantConfig c;
  c.z_rail = 2.0;
  c.cable_total = 4.0;
  c.m_cw = 2.0;
  return c;
}

// Target hanging straight below the pulley with a vertical drop of `drop`.
PlantState hanging(const PlantConfig &c, double drop) {
  return make_initial_state({0.0, 0.0, c.z_rail - drop}, 0.0, 0.0, c);
}

} // namespace

TEST_CASE("geometric_tilt follows the sign convention") {
  const PlantConfig c = rig();
  PlantState s = hanging(c, 2.0);
  auto tilt = geometric_tilt(s, c);
  CHECK(tilt.theta == 0.0);
  CHECK(tilt.phi == 0.0);
  CHECK(tilt.length == doctest::Approx(2.0));

  // Target 0.1 m ahead in x with l1 = 2.0.
  const double h = std::sqrt(4.0 - 0.01);
  s = make_initial_state({0.0, 0.0, c.z_rail - h}, 0.0, 0.0, c);
  s.p_target.x = 0.1;
  tilt = geometric_tilt(s, c);
  CHECK(tilt.length == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(tilt.theta == doctest::Approx(-0.050020856805770016).epsilon(1e-12));

  // Target 0.1 m to the left: the correction moves the tracker toward it.
  s.p_target.x = 0.0;
  s.p_target.y = 0.1;
  tilt = geometric_tilt(s, c);
  CHECK(tilt.phi == doctest::Approx(0.050020856805770016).epsilon(1e-12));
  CHECK(tilt_to_displacement(tilt).dy == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("make_initial_state reproduces the requested tilt") {
  const PlantConfig c = rig();
  const auto s = make_initial_state({0.2, -0.3, 0.5}, deg_to_rad(5.0), deg_to_rad(-3.0), c);
  const auto tilt = geometric_tilt(s, c);
  CHECK(tilt.theta == doctest::Approx(deg_to_rad(5.0)).epsilon(1e-12));
  CHECK(tilt.phi == doctest::Approx(deg_to_rad(-3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(make_initial_state({0.0, 0.0, 2.5}, 0.0, 0.0, c), DomainError);
}

TEST_CASE("quasi-static tension") {
  PlantConfig c = rig();
  c.m_cw = 2.039;
  const PlantState s = hanging(c, 1.7);
  CHECK(compute_tension(s, c) == doctest::Approx(20.0).epsilon(0.01 / 20.0));
}

TEST_CASE("dynamic tension") {
  PlantConfig c = rig();
  c.tension_model = TensionModel::Dynamic;
  const double dt = 0.001;

  SUBCASE("stationary") {
    PlantState s = hanging(c, 1.7);
    for (int i = 0; i < 5; ++i)
      s = move_target(s, s.p_target, c, dt);
    CHECK(s.tension == c.m_cw * c.g_earth);
  }

  SUBCASE("quadratic cable payout matches the analytic acceleration") {
    const double l0 = 1.5;
    PlantState s = hanging(c, l0);
    // Falls back to the static value until three samples exist.
    CHECK(s.tension == c.m_cw * c.g_earth);
    s = move_target(s, {0.0, 0.0, c.z_rail - (l0 + 0.01 * dt * dt)}, c, dt);
    CHECK(s.tension == c.m_cw * c.g_earth);
    for (int n = 2; n < 200; ++n) {
      const double t = n * dt;
      s = move_target(s, {0.0, 0.0, c.z_rail - (l0 + 0.01 * t * t)}, c, dt);
      CHECK(s.tension == doctest::Approx(19.6533).epsilon(1e-6));
    }
  }
}

TEST_CASE("offload_force") {
  const PlantConfig c = rig();
  PlantState s = hanging(c, 2.0);
  auto f = offload_force(s, c, 20.0);
  CHECK(f.fx == 0.0);
  CHECK(f.fy == 0.0);
  CHECK(f.fz == 20.0);
  CHECK(f.alpha == 0.0);

  // alpha = 1 deg: horizontal share is 20 sin(1 deg).
  s = make_initial_state({0.0, 0.0, 0.3}, deg_to_rad(1.0), 0.0, c);
  f = offload_force(s, c, 20.0);
  CHECK(f.horizontal() == doctest::Approx(0.34904812874567026).epsilon(1e-12));
  CHECK(f.alpha == doctest::Approx(deg_to_rad(1.0)).epsilon(1e-12));

  // sin(theta) = 0.025 gives 2.5 % of a 20 N offload, i.e. 0.5 N.
  s = make_initial_state({0.0, 0.0, 0.3}, std::asin(0.025), 0.0, c);
  f = offload_force(s, c, 20.0);
  CHECK(f.fx == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.fy == doctest::Approx(0.0));
  CHECK(f.fz > 0.0);
}

TEST_CASE("force is parallel to the cable and alpha is consistent") {
  const PlantConfig c = rig();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-0.5, 0.5);
  for (int i = 0; i < 500; ++i) {
    const auto s = make_initial_state({ang(rng), ang(rng), 0.4}, ang(rng), ang(rng), c);
    const auto f = offload_force(s, c, 15.0);
    const Vec3 u = Vec3{s.p_tracker.x, s.p_tracker.y, c.z_rail} - s.p_target;
    const double dot = (f.fx * u.x + f.fy * u.y + f.fz * u.z) / (norm(u) * 15.0);
    CHECK(dot == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.horizontal() == doctest::Approx(f.fz * std::tan(f.alpha)).epsilon(1e-9));
  }
}

TEST_CASE("apply_steps") {
  const PlantConfig c = rig();
  const StepperGeometry g{12.5e-6, 20000.0};
  const PlantState s0 = hanging(c, 1.7);

  auto s = apply_steps(s0, 80, -80, g, c, 0.01);
  CHECK(s.p_tracker.x == doctest::Approx(0.001).epsilon(1e-12));
  CHECK(s.p_tracker.y == doctest::Approx(0.0));
  CHECK(s.belt_a == doctest::Approx(0.001));
  CHECK(s.belt_b == doctest::Approx(-0.001));

  s = apply_steps(s0, -80, -80, g, c, 0.01);
  CHECK(s.p_tracker.x == doctest::Approx(0.0));
  CHECK(s.p_tracker.y == doctest::Approx(0.001).epsilon(1e-12));

  s = apply_steps(s0, 0, 0, g, c, 0.01);
  CHECK(s.p_tracker.x == s0.p_tracker.x);
  CHECK(s.p_tracker.y == s0.p_tracker.y);
  CHECK(s.l1 == s0.l1);
  CHECK(s.z_cw == s0.z_cw);

  CHECK_NOTHROW(apply_steps(s0, 20, -20, g, c, 0.001));
  CHECK_THROWS_AS(apply_steps(s0, 21, 0, g, c, 0.001), StepRateExceeded);
  CHECK_THROWS_AS(apply_steps(s0, 0, -201, g, c, 0.01), StepRateExceeded);
}

TEST_CASE("advance_target") {
  const PlantConfig c = rig();
  const PlantState s0 = hanging(c, 1.7);

  const auto push = cart_push(s0.p_target, {1.0, 0.0}, 0.04, 1.0, 0.0);
  auto s = advance_target(s0, push, c, 0.01);
  CHECK(s.p_target.x == doctest::Approx(0.0004).epsilon(1e-12));
  CHECK(s.t == doctest::Approx(0.01));

  s = advance_target(s0, stationary(s0.p_target), c, 0.01);
  CHECK(s.p_target == s0.p_target);

  // One 0.02 m step up a 45 deg slope, sampled after the step completes.
  const auto climb = slope_climb(s0.p_target, {1.0, 0.0}, deg_to_rad(45.0), 0.02, 1.0, 1.0, 1);
  PlantState c1 = s0;
  for (int i = 0; i < 150; ++i)
    c1 = advance_target(c1, climb, c, 0.01);
  CHECK(c1.p_target.x - s0.p_target.x == doctest::Approx(0.0141421356).epsilon(1e-9));
  CHECK(c1.p_target.z - s0.p_target.z == doctest::Approx(0.0141421356).epsilon(1e-9));
}

TEST_CASE("cable length and counterweight stay consistent") {
  const PlantConfig c = rig();
  const StepperGeometry g{12.5e-6, 20000.0};
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> steps(-20, 20);
  std::uniform_real_distribution<double> jitter(-0.002, 0.002);
  PlantState s = hanging(c, 1.6);
  const double offset = s.z_cw - s.l1;
  for (int i = 0; i < 2000; ++i) {
    const double l_before = s.l1;
    const double z_before = s.z_cw;
    const Vec3 p = s.p_target + Vec3{jitter(rng), jitter(rng), jitter(rng)};
    s = move_target(s, p, c, 0.001);
    s = apply_steps(s, steps(rng), steps(rng), g, c, 0.001);
    const Vec3 pulley{s.p_tracker.x, s.p_tracker.y, c.z_rail};
    REQUIRE(std::abs(s.l1 - norm(pulley - s.p_target)) < 1e-12);
    REQUIRE(std::abs((s.z_cw - z_before) - (s.l1 - l_before)) < 1e-12);
    REQUIRE(std::abs((s.z_cw - s.l1) - offset) < 1e-12);
  }
}

TEST_CASE("read_encoders") {
  PlantConfig c = rig();
  std::mt19937_64 rng(1);
  PlantState s = hanging(c, 1.7);
  auto m = read_encoders(s, c, rng);
  CHECK(m.theta_meas == 0.0);
  CHECK(m.phi_meas == 0.0);

  s = make_initial_state({0.0, 0.0, 0.3}, 0.001, 0.0, c);
  m = read_encoders(s, c, rng);
  CHECK(m.theta_meas == doctest::Approx(0.0015339807878856412).epsilon(1e-12));

  CHECK(quantize_angle(0.5 * c.encoder_resolution, c.encoder_resolution) == 0.0);
  CHECK(quantize_angle(1.5 * c.encoder_resolution, c.encoder_resolution) ==
        doctest::Approx(2.0 * c.encoder_resolution));

  c.encoder_noise_sigma = 0.002;
  std::mt19937_64 r1(42), r2(42);
  for (int i = 0; i < 50; ++i) {
    const auto a = read_encoders(s, c, r1);
    const auto b = read_encoders(s, c, r2);
    CHECK(a.theta_meas == b.theta_meas);
    CHECK(a.phi_meas == b.phi_meas);
    const double counts = a.theta_meas / c.encoder_resolution;
    CHECK(counts == doctest::Approx(std::round(counts)));
  }
}

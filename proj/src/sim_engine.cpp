#include "offload/sim_engine.hpp"

#include "offload/errors.hpp"

#include <cmath>
#include <random>

namespace offload {

namespace {

MetricsRecord make_record(const PlantState &s, const PlantConfig &pc, const EncoderReading &meas,
                          const ControlOutput &cmd, bool saturated) {
  const CableTilt tilt = geometric_tilt(s, pc);
  const OffloadForce f = offload_force(s, pc, s.tension);
  MetricsRecord r;
  r.t = s.t;
  r.target_x = s.p_target.x;
  r.target_y = s.p_target.y;
  r.target_z = s.p_target.z;
  r.tracker_x = s.p_tracker.x;
  r.tracker_y = s.p_tracker.y;
  r.theta_true = tilt.theta;
  r.phi_true = tilt.phi;
  r.theta_meas = meas.theta_meas;
  r.phi_meas = meas.phi_meas;
  r.belt_a = s.belt_a;
  r.belt_b = s.belt_b;
  r.tension = s.tension;
  r.fx = f.fx;
  r.fy = f.fy;
  r.fz = f.fz;
  r.alpha = f.alpha;
  r.cmd_vx = cmd.cmd_velocity.x;
  r.cmd_vy = cmd.cmd_velocity.y;
  r.saturated = saturated;
  return r;
}

// Share of `total` steps executed in substep k of n, spread at uniform rate.
std::int64_t substep_share(std::int64_t total, int k, int n) {
  return total * (k + 1) / n - total * k / n;
}

} // namespace

const char *to_string(Termination t) {
  switch (t) {
  case Termination::Completed:
    return "completed";
  case Termination::StepRateExceeded:
    return "step_rate_exceeded";
  case Termination::ConfigError:
    return "config_error";
  }
  return "unknown";
}

void validate(const SimConfig &cfg) {
  if (!(cfg.dt_phys > 0.0))
    throw ConfigError("dt_phys must be positive");
  if (cfg.ctrl_divisor < 1 || cfg.record_divisor < 1)
    throw ConfigError("control and record divisors must be at least 1");
  validate(cfg.scenario);
}

SimResult run(const SimConfig &cfg, const TickObserver &observer) {
  SimResult result;
  try {
    validate(cfg);
  } catch (const std::exception &e) {
    result.termination = Termination::ConfigError;
    result.error = e.what();
    return result;
  }

  const ScenarioConfig &sc = cfg.scenario;
  const PlantConfig &pc = sc.plant;
  const double dt = cfg.dt_phys;
  const int divisor = cfg.ctrl_divisor;
  const auto total_steps = static_cast<std::int64_t>(std::llround(sc.duration / dt));

  std::mt19937_64 rng(pc.noise_seed);
  EncoderReading meas;
  ControlOutput cmd;
  ControllerState cs;
  cs.dt_ctrl = dt * divisor;
  std::int64_t tick = 0;

  try {
    PlantState s = make_initial_state(sc.trajectory.position(0.0), sc.initial_theta,
                                      sc.initial_phi, pc);
    const double base_length = sc.controller_length > 0.0 ? sc.controller_length : s.l1;
    const double ctrl_length = base_length * sc.controller_length_scale;

    result.records.push_back(make_record(s, pc, meas, cmd, false));
    for (std::int64_t n = 0; n < total_steps; ++n) {
      const int sub = static_cast<int>(n % divisor);
      if (sub == 0) {
        meas = read_encoders(s, pc, rng);
        cmd = control_step(meas, ctrl_length, sc.gains, cs, sc.geometry);
        cs = cmd.next;
        if (cs.saturated)
          ++result.saturation_events;
        if (observer)
          observer(tick, cmd, s);
        ++tick;
      }
      s = advance_target(std::move(s), sc.trajectory, pc, dt);
      s = apply_steps(std::move(s), substep_share(cmd.steps_a, sub, divisor),
                      substep_share(cmd.steps_b, sub, divisor), sc.geometry, pc, dt);
      if ((n + 1) % cfg.record_divisor == 0)
        result.records.push_back(make_record(s, pc, meas, cmd, cs.saturated));
    }
  } catch (const StepRateExceeded &e) {
    result.termination = Termination::StepRateExceeded;
    result.error = e.what();
  } catch (const std::exception &e) {
    result.termination = Termination::ConfigError;
    result.error = e.what();
  }

  if (!result.records.empty())
    result.summary = summarize(result.records);
  return result;
}

} // namespace offload

#include "offload/config.hpp"

#include "offload/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>

namespace offload {

namespace {

using nlohmann::json;

void check_keys(const json &j, std::string_view where, std::initializer_list<std::string_view> known) {
  if (!j.is_object())
    throw ConfigError(std::string(where) + " must be an object");
  for (const auto &[key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
}

double number(const json &j, const char *key, double fallback) {
  if (!j.contains(key))
    return fallback;
  const json &v = j.at(key);
  if (!v.is_number())
    throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

int integer(const json &j, const char *key, int fallback) {
  if (!j.contains(key))
    return fallback;
  const json &v = j.at(key);
  if (!v.is_number_integer())
    throw ConfigError(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

Vec3 vec3(const json &j, const char *key, Vec3 fallback) {
  if (!j.contains(key))
    return fallback;
  const json &v = j.at(key);
  if (!v.is_array() || v.size() != 3 || !std::all_of(v.begin(), v.end(), [](const json &e) { return e.is_number(); }))
    throw ConfigError(std::string("'") + key + "' must be [x, y, z]");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

Vec2 unit2(const json &j, const char *key, Vec2 fallback) {
  if (!j.contains(key))
    return fallback;
  const json &v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(std::string("'") + key + "' must be [x, y]");
  const double x = v[0].get<double>();
  const double y = v[1].get<double>();
  const double n = std::hypot(x, y);
  if (!(n > 0.0))
    throw ConfigError(std::string("'") + key + "' must be non-zero");
  return {x / n, y / n};
}

TrajectorySampler parse_trajectory(const json &j) {
  const std::string kind = j.value("kind", "stationary");
  if (kind == "stationary") {
    check_keys(j, "trajectory", {"kind", "position_m"});
    return stationary(vec3(j, "position_m", {}));
  }
  if (kind == "cart_push") {
    check_keys(j, "trajectory", {"kind", "start_m", "direction", "speed_mps", "distance_m", "ramp_time_s"});
    return cart_push(vec3(j, "start_m", {}), unit2(j, "direction", {1.0, 0.0}),
                     number(j, "speed_mps", 0.04), number(j, "distance_m", 1.0),
                     number(j, "ramp_time_s", 0.5));
  }
  if (kind == "slope_climb") {
    check_keys(j, "trajectory", {"kind", "start_m", "heading", "slope_deg", "step_length_m",
                                 "step_duration_s", "dwell_s", "n_steps"});
    return slope_climb(vec3(j, "start_m", {}), unit2(j, "heading", {1.0, 0.0}),
                       deg_to_rad(number(j, "slope_deg", 45.0)), number(j, "step_length_m", 0.05),
                       number(j, "step_duration_s", 1.0), number(j, "dwell_s", 1.0),
                       integer(j, "n_steps", 10));
  }
  if (kind == "waypoints") {
    check_keys(j, "trajectory", {"kind", "points"});
    if (!j.contains("points") || !j.at("points").is_array())
      throw ConfigError("waypoints trajectory needs 'points': [[t, x, y, z], ...]");
    std::vector<Waypoint> pts;
    for (const json &p : j.at("points")) {
      if (!p.is_array() || p.size() != 4)
        throw ConfigError("each waypoint must be [t, x, y, z]");
      pts.push_back({p[0].get<double>(), {p[1].get<double>(), p[2].get<double>(), p[3].get<double>()}});
    }
    return waypoints(std::move(pts));
  }
  throw ConfigError("unknown trajectory kind '" + kind + "'");
}

const json &section(const json &j, const char *key) {
  static const json empty = json::object();
  return j.contains(key) ? j.at(key) : empty;
}

} // namespace

double parse_gravity(std::string_view text, double g_earth) {
  if (text == "moon")
    return g_earth / 6.0;
  if (text == "mars")
    return 3.0 * g_earth / 8.0;
  if (text == "micro")
    return 0.0;
  if (text == "earth")
    return g_earth;
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used == s.size())
      return v;
  } catch (const std::exception &) {
  }
  throw ConfigError("gravity must be moon, mars, micro, earth or a value in m/s^2, got '" +
                    std::string(text) + "'");
}

double parse_gravity(const json &value, double g_earth) {
  if (value.is_number())
    return value.get<double>();
  if (value.is_string())
    return parse_gravity(std::string_view(value.get<std::string>()), g_earth);
  throw ConfigError("gravity must be a preset name or a number");
}

SimConfig parse_config(const json &j) {
  try {
    check_keys(j, "config", {"duration_s", "dt_phys_s", "ctrl_divisor", "record_divisor", "target",
                             "initial_tilt_deg", "trajectory", "plant", "gains", "controller",
                             "stepper"});
    SimConfig cfg;
    cfg.dt_phys = number(j, "dt_phys_s", cfg.dt_phys);
    cfg.ctrl_divisor = integer(j, "ctrl_divisor", cfg.ctrl_divisor);
    cfg.record_divisor = integer(j, "record_divisor", cfg.record_divisor);

    ScenarioConfig &sc = cfg.scenario;
    sc.duration = number(j, "duration_s", sc.duration);

    const json &plant = section(j, "plant");
    check_keys(plant, "plant", {"z_rail_m", "g_earth_mps2", "cable_total_m", "tension_model",
                                "encoder_resolution_deg", "encoder_noise_sigma_deg", "noise_seed"});
    PlantConfig &pc = sc.plant;
    pc.z_rail = number(plant, "z_rail_m", pc.z_rail);
    pc.g_earth = number(plant, "g_earth_mps2", pc.g_earth);
    pc.cable_total = number(plant, "cable_total_m", pc.cable_total);
    if (plant.contains("tension_model")) {
      const std::string model = plant.at("tension_model").get<std::string>();
      if (model == "quasi_static")
        pc.tension_model = TensionModel::QuasiStatic;
      else if (model == "dynamic")
        pc.tension_model = TensionModel::Dynamic;
      else
        throw ConfigError("tension_model must be quasi_static or dynamic");
    }
    if (plant.contains("encoder_resolution_deg"))
      pc.encoder_resolution = deg_to_rad(number(plant, "encoder_resolution_deg", 0.0));
    pc.encoder_noise_sigma = deg_to_rad(number(plant, "encoder_noise_sigma_deg", 0.0));
    if (plant.contains("noise_seed")) {
      if (!plant.at("noise_seed").is_number_unsigned())
        throw ConfigError("'noise_seed' must be a non-negative integer");
      pc.noise_seed = plant.at("noise_seed").get<std::uint64_t>();
    }

    const json &target = section(j, "target");
    check_keys(target, "target", {"mass_kg", "gravity"});
    sc.m_target = number(target, "mass_kg", sc.m_target);
    if (target.contains("gravity"))
      sc.g_sim = parse_gravity(target.at("gravity"), pc.g_earth);

    const json &tilt = section(j, "initial_tilt_deg");
    check_keys(tilt, "initial_tilt_deg", {"theta", "phi"});
    sc.initial_theta = deg_to_rad(number(tilt, "theta", 0.0));
    sc.initial_phi = deg_to_rad(number(tilt, "phi", 0.0));

    sc.trajectory = parse_trajectory(section(j, "trajectory"));

    const json &gains = section(j, "gains");
    check_keys(gains, "gains", {"kp", "ki", "kd", "integral_limit_m", "deadband_deg"});
    sc.gains.kp = number(gains, "kp", sc.gains.kp);
    sc.gains.ki = number(gains, "ki", sc.gains.ki);
    sc.gains.kd = number(gains, "kd", sc.gains.kd);
    sc.gains.integral_limit = number(gains, "integral_limit_m", sc.gains.integral_limit);
    sc.gains.deadband = deg_to_rad(number(gains, "deadband_deg", 0.0));

    const json &ctrl = section(j, "controller");
    check_keys(ctrl, "controller", {"cable_length_m", "cable_length_scale"});
    sc.controller_length = number(ctrl, "cable_length_m", 0.0);
    sc.controller_length_scale = number(ctrl, "cable_length_scale", 1.0);

    const json &stepper = section(j, "stepper");
    check_keys(stepper, "stepper", {"feed_per_step_m", "max_step_rate_sps"});
    sc.geometry.feed_per_step = number(stepper, "feed_per_step_m", sc.geometry.feed_per_step);
    sc.geometry.max_step_rate = number(stepper, "max_step_rate_sps", sc.geometry.max_step_rate);

    finalize(sc);
    validate(cfg);
    return cfg;
  } catch (const ConfigError &) {
    throw;
  } catch (const std::exception &e) {
    throw ConfigError(e.what());
  }
}

json load_json(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is)
    throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return json::parse(is);
  } catch (const json::parse_error &e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

SimConfig load_config(const std::filesystem::path &path) {
  const json j = load_json(path);
  try {
    return parse_config(j);
  } catch (const ConfigError &e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void set_param(json &j, std::string_view dotted_key, std::string_view value) {
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error &) {
    parsed = std::string(value);
  }
  json *node = &j;
  std::string_view rest = dotted_key;
  while (true) {
    const auto dot = rest.find('.');
    const std::string key(rest.substr(0, dot));
    if (key.empty())
      throw ConfigError("malformed parameter key '" + std::string(dotted_key) + "'");
    if (dot == std::string_view::npos) {
      (*node)[key] = parsed;
      return;
    }
    node = &(*node)[key];
    if (!node->is_null() && !node->is_object())
      throw ConfigError("'" + key + "' in '" + std::string(dotted_key) + "' is not a section");
    rest = rest.substr(dot + 1);
  }
}

GainGrid parse_grid(const json &j) {
  try {
    check_keys(j, "grid", {"kp", "ki", "kd", "refine"});
    GainGrid g;
    auto axis = [&](const char *key) {
      std::vector<double> out;
      if (j.contains(key))
        out = j.at(key).get<std::vector<double>>();
      return out;
    };
    g.kp = axis("kp");
    g.ki = axis("ki");
    g.kd = axis("kd");
    g.refine = j.value("refine", false);
    return g;
  } catch (const ConfigError &) {
    throw;
  } catch (const std::exception &e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

json gains_to_json(const PidGains &g) {
  return {{"kp", g.kp},
          {"ki", g.ki},
          {"kd", g.kd},
          {"integral_limit_m", g.integral_limit},
          {"deadband_deg", rad_to_deg(g.deadband)}};
}

} // namespace offload

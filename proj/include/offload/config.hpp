#pragma once

#include "offload/sim_engine.hpp"
#include "offload/tuning.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace offload {

/// Run configuration file (JSON). SI units, angles in degrees. Every key is
/// optional; unknown keys are rejected. Throws ConfigError.
SimConfig parse_config(const nlohmann::json &j);
SimConfig load_config(const std::filesystem::path &path);

nlohmann::json load_json(const std::filesystem::path &path);

/// Overrides one dotted key ("trajectory.speed_mps") in a raw config. The
/// value is read as JSON when it parses, else as a string.
void set_param(nlohmann::json &j, std::string_view dotted_key, std::string_view value);

/// "moon", "mars", "micro", "earth" or a number in m/s^2.
double parse_gravity(std::string_view text, double g_earth);
double parse_gravity(const nlohmann::json &value, double g_earth);

/// {"kp": [...], "ki": [...], "kd": [...], "refine": bool}
GainGrid parse_grid(const nlohmann::json &j);

nlohmann::json gains_to_json(const PidGains &g);

} // namespace offload

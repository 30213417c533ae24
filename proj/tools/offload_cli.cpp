// Command-line front end: simulate, batch, sweep, tune, size-counterweight.
//
// Exit codes: 0 when every run completes and meets both force thresholds,
// 1 when a run completes but misses a threshold, 2 on any error.

#include "offload/batch.hpp"
#include "offload/config.hpp"
#include "offload/errors.hpp"
#include "offload/report.hpp"
#include "offload/scenarios.hpp"
#include "offload/tuning.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace offload;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitThreshold = 1;
constexpr int kExitError = 2;

int exit_code(const SimResult &r) {
  if (r.termination != Termination::Completed)
    return kExitError;
  return r.summary.passed() ? kExitPass : kExitThreshold;
}

int worst(int a, int b) { return std::max(a, b); }

void print_line(const std::string &name, const SimResult &r) {
  std::printf("%-28s %-18s max_alpha=%.4f deg  max_fh=%.4f N  mean_speed=%.4f m/s  %s\n",
              name.c_str(), to_string(r.termination), r.summary.max_alpha_deg,
              r.summary.max_horizontal_force, r.summary.mean_target_speed,
              r.passed() ? "PASS" : "FAIL");
  if (!r.error.empty())
    std::printf("%-28s error: %s\n", "", r.error.c_str());
}

int report_batch(const std::vector<std::string> &names, const std::vector<SimResult> &results,
                 const fs::path &out) {
  int code = kExitPass;
  for (std::size_t i = 0; i < results.size(); ++i) {
    write_run(results[i], out / names[i]);
    print_line(names[i], results[i]);
    code = worst(code, exit_code(results[i]));
  }
  return code;
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty())
      out.push_back(item);
  return out;
}

int cmd_simulate(const fs::path &config, const fs::path &out) {
  const SimConfig cfg = load_config(config);
  const SimResult r = run(cfg);
  write_run(r, out);
  print_line(config.stem().string(), r);
  return exit_code(r);
}

int cmd_batch(const fs::path &dir, const fs::path &out) {
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw ConfigError("no *.json configs in '" + dir.string() + "'");

  std::vector<std::string> names;
  std::vector<SimConfig> cfgs(files.size());
  std::vector<std::string> load_errors(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    names.push_back(files[i].stem().string());
    try {
      cfgs[i] = load_config(files[i]);
    } catch (const std::exception &e) {
      load_errors[i] = e.what();
      cfgs[i].dt_phys = 0.0; // run() reports this slot as a config error
    }
  }
  std::vector<SimResult> results = run_batch(cfgs);
  for (std::size_t i = 0; i < results.size(); ++i)
    if (!load_errors[i].empty())
      results[i].error = load_errors[i];
  return report_batch(names, results, out);
}

int cmd_sweep(const fs::path &config, const std::string &param, const std::string &values,
              const fs::path &out) {
  const nlohmann::json base = load_json(config);
  std::vector<std::string> names;
  std::vector<SimConfig> cfgs;
  for (const std::string &v : split_list(values)) {
    nlohmann::json j = base;
    set_param(j, param, v);
    cfgs.push_back(parse_config(j));
    names.push_back(param + "=" + v);
  }
  if (cfgs.empty())
    throw ConfigError("--values is empty");
  return report_batch(names, run_batch(cfgs), out);
}

int cmd_tune(const fs::path &config, const fs::path &grid_path, const fs::path &out) {
  const SimConfig cfg = load_config(config);
  const GainGrid grid = parse_grid(load_json(grid_path));
  const TuneResult tr = tune_gains(cfg, grid);

  std::ostringstream table;
  table << "kp,ki,kd,max_alpha_deg,max_horizontal_force_N,termination\n";
  for (const auto &c : tr.report) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g,%.9g,%s\n", c.gains.kp, c.gains.ki,
                  c.gains.kd, c.max_alpha_deg, c.max_horizontal_force, to_string(c.termination));
    table << buf;
  }
  std::cout << table.str();
  std::printf("best: kp=%g ki=%g kd=%g max_alpha=%.4f deg max_fh=%.4f N\n", tr.best.kp,
              tr.best.ki, tr.best.kd, tr.best_metrics.max_alpha_deg,
              tr.best_metrics.max_horizontal_force);
  if (!out.empty()) {
    fs::create_directories(out);
    std::ofstream(out / "tune_report.csv", std::ios::binary) << table.str();
    std::ofstream(out / "best_gains.json") << gains_to_json(tr.best).dump(2) << '\n';
  }
  const bool pass = tr.best_metrics.max_alpha_deg <= kMaxAlphaDeg &&
                    tr.best_metrics.max_horizontal_force <= kMaxHorizontalForce;
  return pass ? kExitPass : kExitThreshold;
}

int cmd_size(double mass, const std::string &gravity, double g_earth) {
  const double g_sim = parse_gravity(std::string_view(gravity), g_earth);
  const double m_cw = counterweight_for_gravity(mass, g_sim, g_earth);
  std::printf("target_mass_kg = %.6g\n", mass);
  std::printf("simulated_gravity_mps2 = %.6f\n", g_sim);
  std::printf("counterweight_mass_kg = %.3f\n", m_cw);
  std::printf("vertical_offload_N = %.3f\n", m_cw * g_earth);
  return kExitPass;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Closed-loop simulator of a counterweight gravity-offloading testbed"};
  app.require_subcommand(1);

  fs::path config, out = "out", configs_dir, grid;
  std::string param, values, gravity;
  double mass = 0.0;
  double g_earth = 9.80665;

  auto *sim = app.add_subcommand("simulate", "run one scenario");
  sim->add_option("--config", config, "run configuration (JSON)")->required();
  sim->add_option("--out", out, "output directory");

  auto *batch = app.add_subcommand("batch", "run every *.json config in a directory");
  batch->add_option("--configs", configs_dir, "directory of configs")->required();
  batch->add_option("--out", out, "output directory (one subdirectory per config)");

  auto *sweep = app.add_subcommand("sweep", "vary one config key over a list of values");
  sweep->add_option("--config", config, "base configuration")->required();
  sweep->add_option("--param", param, "dotted key, e.g. trajectory.speed_mps")->required();
  sweep->add_option("--values", values, "comma-separated values")->required();
  sweep->add_option("--out", out, "output directory");

  auto *tune = app.add_subcommand("tune", "grid-search PID gains on a scenario");
  tune->add_option("--config", config, "scenario configuration")->required();
  tune->add_option("--grid", grid, "gain grid (JSON)")->required();
  fs::path tune_out;
  tune->add_option("--out", tune_out, "directory for tune_report.csv and best_gains.json");

  auto *size = app.add_subcommand("size-counterweight", "counterweight mass for a simulated gravity");
  size->add_option("--mass", mass, "target mass [kg]")->required();
  size->add_option("--gravity", gravity, "moon | mars | micro | value in m/s^2")->required();
  size->add_option("--g-earth", g_earth, "reference gravity [m/s^2]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitError;
  }

  try {
    if (*sim)
      return cmd_simulate(config, out);
    if (*batch)
      return cmd_batch(configs_dir, out);
    if (*sweep)
      return cmd_sweep(config, param, values, out);
    if (*tune)
      return cmd_tune(config, grid, tune_out);
    if (*size)
      return cmd_size(mass, gravity, g_earth);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}

#include "offload/report.hpp"

#include "offload/errors.hpp"
#include "offload/vec.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace offload {

const std::vector<std::string> kCsvColumns = {
    "t_s",          "target_x_m",    "target_y_m",     "target_z_m",     "tracker_x_m",
    "tracker_y_m",  "theta_true_deg", "phi_true_deg",  "theta_meas_deg", "phi_meas_deg",
    "belt_a_m",     "belt_b_m",      "tension_N",      "fx_N",           "fy_N",
    "fz_N",         "alpha_deg",     "cmd_vx_mps",     "cmd_vy_mps",     "saturated"};

namespace {

void put(std::string &line, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  line += buf;
}

std::ofstream open_out(const std::filesystem::path &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return os;
}

void check_written(const std::ofstream &os, const std::filesystem::path &path) {
  if (!os)
    throw std::runtime_error("write to '" + path.string() + "' failed");
}

} // namespace

void write_csv(std::ostream &os, std::span<const MetricsRecord> records) {
  std::string line;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i)
      line += ',';
    line += kCsvColumns[i];
  }
  line += '\n';
  os << line;

  for (const auto &r : records) {
    line.clear();
    const double values[] = {r.t,
                             r.target_x,
                             r.target_y,
                             r.target_z,
                             r.tracker_x,
                             r.tracker_y,
                             rad_to_deg(r.theta_true),
                             rad_to_deg(r.phi_true),
                             rad_to_deg(r.theta_meas),
                             rad_to_deg(r.phi_meas),
                             r.belt_a,
                             r.belt_b,
                             r.tension,
                             r.fx,
                             r.fy,
                             r.fz,
                             rad_to_deg(r.alpha),
                             r.cmd_vx,
                             r.cmd_vy};
    for (double v : values) {
      put(line, v);
      line += ',';
    }
    line += r.saturated ? '1' : '0';
    line += '\n';
    os << line;
  }
}

void write_csv(std::span<const MetricsRecord> records, const std::filesystem::path &path) {
  auto os = open_out(path);
  write_csv(os, records);
  check_written(os, path);
}

std::vector<MetricsRecord> read_csv(std::istream &is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("CSV is empty");
  {
    std::vector<std::string> header;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');)
      header.push_back(cell);
    if (header != kCsvColumns)
      throw std::runtime_error("CSV header does not match the telemetry columns");
  }

  std::vector<MetricsRecord> out;
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    std::vector<double> v;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      std::size_t used = 0;
      v.push_back(std::stod(cell, &used));
      if (used != cell.size())
        throw std::runtime_error("malformed CSV cell '" + cell + "'");
    }
    if (v.size() != kCsvColumns.size())
      throw std::runtime_error("CSV row has " + std::to_string(v.size()) + " cells");
    MetricsRecord r;
    r.t = v[0];
    r.target_x = v[1];
    r.target_y = v[2];
    r.target_z = v[3];
    r.tracker_x = v[4];
    r.tracker_y = v[5];
    r.theta_true = deg_to_rad(v[6]);
    r.phi_true = deg_to_rad(v[7]);
    r.theta_meas = deg_to_rad(v[8]);
    r.phi_meas = deg_to_rad(v[9]);
    r.belt_a = v[10];
    r.belt_b = v[11];
    r.tension = v[12];
    r.fx = v[13];
    r.fy = v[14];
    r.fz = v[15];
    r.alpha = deg_to_rad(v[16]);
    r.cmd_vx = v[17];
    r.cmd_vy = v[18];
    r.saturated = v[19] != 0.0;
    out.push_back(r);
  }
  return out;
}

std::vector<MetricsRecord> read_csv(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_csv(is);
}

namespace {

nlohmann::ordered_json to_json(const SummaryStats &s) {
  nlohmann::ordered_json j;
  j["max_alpha_deg"] = s.max_alpha_deg;
  j["mean_alpha_deg"] = s.mean_alpha_deg;
  j["rms_alpha_deg"] = s.rms_alpha_deg;
  j["max_horizontal_force_N"] = s.max_horizontal_force;
  j["mean_target_speed_mps"] = s.mean_target_speed;
  j["pass_angle"] = s.pass_angle;
  j["pass_force"] = s.pass_force;
  j["duration_s"] = s.duration;
  return j;
}

void write_json(const nlohmann::ordered_json &j, const std::filesystem::path &path) {
  auto os = open_out(path);
  os << j.dump(2) << '\n';
  check_written(os, path);
}

} // namespace

void write_summary(const SummaryStats &stats, const std::filesystem::path &path) {
  write_json(to_json(stats), path);
}

void write_summary(const SimResult &result, const std::filesystem::path &path) {
  nlohmann::ordered_json j = to_json(result.summary);
  j["termination"] = to_string(result.termination);
  j["saturation_events"] = result.saturation_events;
  j["records"] = result.records.size();
  if (!result.error.empty())
    j["error"] = result.error;
  write_json(j, path);
}

std::vector<std::filesystem::path> emit_plot_data(std::span<const MetricsRecord> records,
                                                  const std::filesystem::path &dir) {
  if (records.empty())
    throw EmptyRun();
  struct Series {
    const char *file;
    const char *label;
    double (*value)(const MetricsRecord &);
  };
  const Series series[] = {
      {"plot_alpha_deg.dat", "alpha_deg", [](const MetricsRecord &r) { return rad_to_deg(r.alpha); }},
      {"plot_fx_N.dat", "fx_N", [](const MetricsRecord &r) { return r.fx; }},
      {"plot_fy_N.dat", "fy_N", [](const MetricsRecord &r) { return r.fy; }},
  };

  std::vector<std::filesystem::path> written;
  for (const auto &s : series) {
    const auto path = dir / s.file;
    auto os = open_out(path);
    std::string line = std::string("# t_s ") + s.label + '\n';
    for (const auto &r : records) {
      put(line, r.t);
      line += ' ';
      put(line, s.value(r));
      line += '\n';
    }
    os << line;
    check_written(os, path);
    written.push_back(path);
  }
  return written;
}

void write_run(const SimResult &result, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  write_csv(result.records, dir / "records.csv");
  write_summary(result, dir / "summary.json");
  if (!result.records.empty())
    emit_plot_data(result.records, dir);
}

} // namespace offload

#include "offload/errors.hpp"
#include "offload/report.hpp"
#include "offload/sim_engine.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace offload;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const char *name) {
  const fs::path dir = fs::temp_directory_path() / "offload_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

MetricsRecord sample(double t, double alpha_deg, double fh) {
  MetricsRecord r;
  r.t = t;
  r.alpha = deg_to_rad(alpha_deg);
  r.fz = 20.0;
  r.fx = fh;
  return r;
}

} // namespace

TEST_CASE("summarize") {
  CHECK_THROWS_AS(summarize({}), EmptyRun);

  std::vector<MetricsRecord> flat = {sample(0.0, 0.0, 0.0), sample(0.1, 0.0, 0.0)};
  auto s = summarize(flat);
  CHECK(s.max_alpha_deg == 0.0);
  CHECK(s.pass_angle);
  CHECK(s.pass_force);

  std::vector<MetricsRecord> spike = {sample(0.0, 0.2, 0.1), sample(0.1, 1.2, 0.3),
                                      sample(0.2, -0.4, 0.2)};
  s = summarize(spike);
  CHECK(s.max_alpha_deg == doctest::Approx(1.2));
  CHECK_FALSE(s.pass_angle);
  CHECK(s.pass_force);
  CHECK(s.mean_alpha_deg == doctest::Approx(0.6));
  CHECK(s.rms_alpha_deg == doctest::Approx(std::sqrt((0.04 + 1.44 + 0.16) / 3.0)));

  // Exactly on the thresholds passes.
  std::vector<MetricsRecord> edge = {sample(0.0, 1.0, 0.5)};
  s = summarize(edge);
  CHECK(s.pass_angle);
  CHECK(s.pass_force);
  edge[0].fx = 0.5000001;
  CHECK_FALSE(summarize(edge).pass_force);
}

TEST_CASE("mean target speed counts only moving samples") {
  std::vector<MetricsRecord> recs;
  for (int k = 0; k <= 100; ++k) {
    MetricsRecord r;
    r.t = 0.1 * k;
    r.target_x = k <= 50 ? 0.004 * k : 0.2;
    recs.push_back(r);
  }
  CHECK(summarize(recs).mean_target_speed == doctest::Approx(0.04));
}

TEST_CASE("CSV layout") {
  std::ostringstream os;
  write_csv(os, {});
  const std::string header = os.str();
  CHECK(header.rfind("t_s,target_x_m,target_y_m,target_z_m,", 0) == 0);
  CHECK(header.find("alpha_deg") != std::string::npos);
  CHECK(header.back() == '\n');
  CHECK(header.find('\r') == std::string::npos);
  CHECK(std::count(header.begin(), header.end(), '\n') == 1);

  MetricsRecord r = sample(0.25, 0.5, 0.17453);
  r.theta_true = deg_to_rad(0.5);
  std::ostringstream one;
  write_csv(one, std::vector<MetricsRecord>{r});
  const std::string text = one.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find("\n0.25,0,0,0,0,0,0.5,0,0,0,0,0,0,0.17453,0,20,0.5,0,0,0\n") != std::string::npos);
}

TEST_CASE("CSV roundtrip reproduces records to nine significant digits") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<MetricsRecord> recs;
  for (int i = 0; i < 200; ++i) {
    MetricsRecord r;
    r.t = 0.01 * i;
    double *fields[] = {&r.target_x, &r.target_y, &r.target_z, &r.tracker_x, &r.tracker_y,
                        &r.theta_true, &r.phi_true, &r.theta_meas, &r.phi_meas, &r.belt_a,
                        &r.belt_b, &r.tension, &r.fx, &r.fy, &r.fz, &r.alpha, &r.cmd_vx,
                        &r.cmd_vy};
    for (double *f : fields)
      *f = u(rng) * std::pow(10.0, static_cast<int>(u(rng)));
    r.saturated = i % 3 == 0;
    recs.push_back(r);
  }
  std::stringstream ss;
  write_csv(ss, recs);
  const auto back = read_csv(ss);
  REQUIRE(back.size() == recs.size());
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)); };
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(close(back[i].t, recs[i].t));
    CHECK(close(back[i].alpha, recs[i].alpha));
    CHECK(close(back[i].theta_meas, recs[i].theta_meas));
    CHECK(close(back[i].fy, recs[i].fy));
    CHECK(close(back[i].belt_b, recs[i].belt_b));
    CHECK(back[i].saturated == recs[i].saturated);
  }
}

TEST_CASE("read_csv rejects foreign files") {
  std::istringstream wrong("a,b,c\n1,2,3\n");
  CHECK_THROWS(read_csv(wrong));
  std::ostringstream os;
  write_csv(os, {});
  std::istringstream short_row(os.str() + "1,2,3\n");
  CHECK_THROWS(read_csv(short_row));
}

TEST_CASE("file output") {
  const fs::path dir = scratch("files");
  CHECK_THROWS(write_csv({}, dir / "missing" / "x.csv"));
  CHECK_THROWS_AS(emit_plot_data({}, dir), EmptyRun);

  SimConfig cfg;
  cfg.scenario.trajectory = stationary({0.0, 0.0, 0.3});
  cfg.scenario.duration = 0.5;
  finalize(cfg.scenario);
  const auto r = run(cfg);
  write_run(r, dir / "a");
  write_run(r, dir / "b");
  CHECK(slurp(dir / "a" / "records.csv") == slurp(dir / "b" / "records.csv"));
  CHECK(slurp(dir / "a" / "summary.json").find("\"pass_angle\": true") != std::string::npos);

  const auto files = emit_plot_data(r.records, dir);
  REQUIRE(files.size() == 3);
  std::ifstream alpha(files[0]);
  std::string line;
  std::getline(alpha, line);
  CHECK(line == "# t_s alpha_deg");
  int rows = 0;
  double t = 0.0, a = 1.0;
  while (alpha >> t >> a) {
    CHECK(a == 0.0);
    ++rows;
  }
  CHECK(rows == static_cast<int>(r.records.size()));
}

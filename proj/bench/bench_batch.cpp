// Times run_batch (OpenMP) against the serial reference on a sweep of cart
// pushes and checks that both produce the same records.
//
//   bench_batch [runs] [repeats]

#include "offload/batch.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

using namespace offload;

namespace {

template <class F> double seconds(F &&f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main(int argc, char **argv) {
  const int runs = argc > 1 ? std::atoi(argv[1]) : 48;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

  std::vector<SimConfig> cfgs;
  for (int i = 0; i < runs; ++i) {
    SimConfig cfg;
    const double speed = 0.029 + 0.014 * i / std::max(1, runs - 1);
    cfg.scenario.trajectory = cart_push({0.0, 0.0, 0.3}, {0.6, 0.8}, speed, 1.0, 0.5);
    cfg.scenario.duration = cfg.scenario.trajectory.motion_end();
    cfg.scenario.plant.encoder_noise_sigma = 2e-4;
    cfg.scenario.plant.noise_seed = static_cast<std::uint64_t>(i + 1);
    finalize(cfg.scenario);
    cfgs.push_back(cfg);
  }

  double best_serial = 1e300, best_parallel = 1e300;
  std::vector<SimResult> serial, parallel;
  for (int r = 0; r < repeats; ++r) {
    best_serial = std::min(best_serial, seconds([&] { serial = run_batch_serial(cfgs); }));
    best_parallel = std::min(best_parallel, seconds([&] { parallel = run_batch(cfgs); }));
  }

  bool same = serial.size() == parallel.size();
  for (std::size_t i = 0; same && i < serial.size(); ++i)
    same = serial[i].records == parallel[i].records;

  std::printf("runs=%d threads=%d\n", runs, batch_threads());
  std::printf("serial   %.4f s\n", best_serial);
  std::printf("parallel %.4f s  speedup %.2fx\n", best_parallel, best_serial / best_parallel);
  std::printf("results identical: %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}

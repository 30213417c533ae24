#include "offload/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace offload {

std::vector<SimResult> run_batch(std::span<const SimConfig> cfgs) {
  std::vector<SimResult> results(cfgs.size());
  const auto n = static_cast<long>(cfgs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i)
    results[static_cast<std::size_t>(i)] = run(cfgs[static_cast<std::size_t>(i)]);
  return results;
}

std::vector<SimResult> run_batch_serial(std::span<const SimConfig> cfgs) {
  std::vector<SimResult> results;
  results.reserve(cfgs.size());
  for (const auto &cfg : cfgs)
    results.push_back(run(cfg));
  return results;
}

int batch_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace offload

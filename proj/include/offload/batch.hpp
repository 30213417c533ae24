#pragma once

#include "offload/sim_engine.hpp"

#include <span>
#include <vector>

namespace offload {

/// Runs every config, in parallel when OpenMP is available. Results keep the
/// input order and match run() on each config exactly; a bad config only
/// affects its own slot.
std::vector<SimResult> run_batch(std::span<const SimConfig> cfgs);

/// Single-threaded reference for run_batch.
std::vector<SimResult> run_batch_serial(std::span<const SimConfig> cfgs);

/// Worker threads run_batch will use.
int batch_threads();

} // namespace offload

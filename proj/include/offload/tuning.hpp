#pragma once

#include "offload/sim_engine.hpp"

#include <vector>

namespace offload {

/// Candidate values per gain. integral_limit and deadband come from the base
/// scenario.
struct GainGrid {
  std::vector<double> kp;
  std::vector<double> ki;
  std::vector<double> kd;
  /// After the grid, try the midpoints between the best value and its grid
  /// neighbours, one gain at a time.
  bool refine = false;
};

struct TuneCandidate {
  PidGains gains;
  double max_alpha_deg = 0.0;
  double max_horizontal_force = 0.0;
  Termination termination = Termination::Completed;
  bool feasible = false;
};

struct TuneResult {
  PidGains best;
  TuneCandidate best_metrics;
  std::vector<TuneCandidate> report; ///< grid order (kp, then ki, then kd), refinements appended
};

/// Exhaustive search minimizing max |alpha| over the run; candidates whose run
/// does not complete are infeasible. Ties go to the lexicographically smallest
/// (kp, ki, kd). Throws NoFeasibleGains for an empty grid or when nothing is
/// feasible.
TuneResult tune_gains(const SimConfig &base, const GainGrid &grid);

/// Same search with candidates evaluated one after another.
TuneResult tune_gains_serial(const SimConfig &base, const GainGrid &grid);

} // namespace offload

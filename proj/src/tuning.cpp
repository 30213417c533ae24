#include "offload/tuning.hpp"

#include "offload/batch.hpp"
#include "offload/errors.hpp"

#include <algorithm>
#include <span>
#include <tuple>

namespace offload {

namespace {

using Runner = std::vector<SimResult> (*)(std::span<const SimConfig>);

std::vector<TuneCandidate> evaluate(const SimConfig &base, const std::vector<PidGains> &gains,
                                    Runner runner) {
  std::vector<SimConfig> cfgs(gains.size(), base);
  for (std::size_t i = 0; i < gains.size(); ++i)
    cfgs[i].scenario.gains = gains[i];
  const std::vector<SimResult> results = runner(cfgs);

  std::vector<TuneCandidate> out(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) {
    out[i].gains = gains[i];
    out[i].termination = results[i].termination;
    out[i].feasible = results[i].termination == Termination::Completed;
    out[i].max_alpha_deg = results[i].summary.max_alpha_deg;
    out[i].max_horizontal_force = results[i].summary.max_horizontal_force;
  }
  return out;
}

bool better(const TuneCandidate &a, const TuneCandidate &b) {
  if (a.feasible != b.feasible)
    return a.feasible;
  if (a.max_alpha_deg != b.max_alpha_deg)
    return a.max_alpha_deg < b.max_alpha_deg;
  return std::tie(a.gains.kp, a.gains.ki, a.gains.kd) <
         std::tie(b.gains.kp, b.gains.ki, b.gains.kd);
}

const TuneCandidate &pick(const std::vector<TuneCandidate> &cands) {
  return *std::min_element(cands.begin(), cands.end(), better);
}

// Midpoints between `value` and its neighbours in the sorted, de-duplicated axis.
std::vector<double> midpoints(std::vector<double> axis, double value) {
  std::sort(axis.begin(), axis.end());
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  std::vector<double> out;
  const auto it = std::find(axis.begin(), axis.end(), value);
  if (it == axis.end())
    return out;
  if (it != axis.begin())
    out.push_back(0.5 * (*(it - 1) + value));
  if (it + 1 != axis.end())
    out.push_back(0.5 * (value + *(it + 1)));
  return out;
}

TuneResult tune(const SimConfig &base, const GainGrid &grid, Runner runner) {
  if (grid.kp.empty() || grid.ki.empty() || grid.kd.empty())
    throw NoFeasibleGains("gain grid is empty");

  std::vector<PidGains> gains;
  for (double kp : grid.kp)
    for (double ki : grid.ki)
      for (double kd : grid.kd) {
        PidGains g = base.scenario.gains;
        g.kp = kp;
        g.ki = ki;
        g.kd = kd;
        gains.push_back(g);
      }

  TuneResult result;
  result.report = evaluate(base, gains, runner);
  TuneCandidate best = pick(result.report);
  if (!best.feasible)
    throw NoFeasibleGains("no gain candidate completed the scenario");

  if (grid.refine) {
    const std::vector<double> *axes[] = {&grid.kp, &grid.ki, &grid.kd};
    for (int axis = 0; axis < 3; ++axis) {
      std::vector<PidGains> trial;
      double PidGains::*field = axis == 0 ? &PidGains::kp : axis == 1 ? &PidGains::ki : &PidGains::kd;
      for (double v : midpoints(*axes[axis], best.gains.*field)) {
        PidGains g = best.gains;
        g.*field = v;
        trial.push_back(g);
      }
      if (trial.empty())
        continue;
      auto evaluated = evaluate(base, trial, runner);
      result.report.insert(result.report.end(), evaluated.begin(), evaluated.end());
      evaluated.push_back(best);
      best = pick(evaluated);
    }
  }

  result.best = best.gains;
  result.best_metrics = best;
  return result;
}

} // namespace

TuneResult tune_gains(const SimConfig &base, const GainGrid &grid) {
  return tune(base, grid, &run_batch);
}

TuneResult tune_gains_serial(const SimConfig &base, const GainGrid &grid) {
  return tune(base, grid, &run_batch_serial);
}

} // namespace offload

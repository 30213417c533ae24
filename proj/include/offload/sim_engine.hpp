#pragma once

#include "offload/controller.hpp"
#include "offload/metrics.hpp"
#include "offload/scenarios.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace offload {

struct SimConfig {
  double dt_phys = 0.001;
  int ctrl_divisor = 10;
  int record_divisor = 10;
  ScenarioConfig scenario;
};

void validate(const SimConfig &cfg);

enum class Termination { Completed, StepRateExceeded, ConfigError };

const char *to_string(Termination t);

struct SimResult {
  std::vector<MetricsRecord> records;
  SummaryStats summary;
  std::int64_t saturation_events = 0; ///< control ticks that hit the step-rate limit
  Termination termination = Termination::Completed;
  std::string error;

  bool passed() const { return termination == Termination::Completed && summary.passed(); }
};

/// Called once per control tick with the tick index, the controller output
/// and the plant state the measurement was taken from.
using TickObserver =
    std::function<void(std::int64_t tick, const ControlOutput &, const PlantState &)>;

/// Fixed-step closed loop. Every physics step the target advances and the
/// current share of the last step command is executed; every ctrl_divisor
/// steps the encoders are read and a new command is issued, spread uniformly
/// over the following control interval. Deterministic for a given config.
/// Errors end the run early with the records gathered so far.
SimResult run(const SimConfig &cfg, const TickObserver &observer = {});

} // namespace offload

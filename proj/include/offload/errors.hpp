#pragma once

#include <stdexcept>
#include <string>

namespace offload {

// Geometry that cannot be evaluated (zero cable length, tilt outside its domain).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A step command larger than the motor can physically issue in the interval.
// Always a controller bug; the engine aborts the run.
struct StepRateExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrajectoryOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoFeasibleGains : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyRun : std::runtime_error {
  EmptyRun() : std::runtime_error("run produced no records") {}
};

} // namespace offload

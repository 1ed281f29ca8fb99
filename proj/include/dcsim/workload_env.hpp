#pragma once

#include <cstddef>
#include <vector>

namespace dcsim {

struct SeriesBundle;

enum class LSAction : int { Defer = 0, DoNothing = 1, ProcessQueue = 2 };

/// Aggregate deferral queue. All amounts are in task-units: one unit is a
/// full step of load at capacity 1.0.
struct WorkloadState {
  double queue = 0.0;
  /// Part of `queue` deferred since the start of the current day (FIFO: work
  /// carried over from earlier days is executed first). Cleared at midnight.
  double pending = 0.0;
  double dropped_this_step = 0.0;
  int step_in_day = 0;

  bool operator==(const WorkloadState&) const = default;
};

struct WorkloadParams {
  double flexible_ratio = 0.2;
  double capacity = 1.0;
  double queue_max = 500.0;
  int steps_per_hour = 4;
};

struct FlexSplit {
  double flexible = 0.0;
  double inflexible = 0.0;
};

FlexSplit split_flexible(double load, double flexible_ratio);

struct WorkloadStep {
  double executed_load = 0.0;  // B_hat
  WorkloadState next;
};

WorkloadStep step_workload(const WorkloadState& state, LSAction action, double load,
                           const WorkloadParams& params);

inline constexpr double kPenaltyPerDroppedTask = -10.0;
inline constexpr double kQueueRampStart = 0.95833;
inline constexpr double kQueueRampEnd = 0.98935;

/// Dropped-task penalty plus the end-of-day queue ramp. `state` is the
/// post-step state (its dropped amount and queue); `step_in_day` is the step
/// at which the action was taken.
double ls_penalty(const WorkloadState& state, int step_in_day, int steps_per_hour);

/// Observation for the load-shifting agent; see observation.hpp for layout.
std::vector<double> observe_ls(const WorkloadState& state, std::size_t t,
                               const SeriesBundle& bundle, double battery_soc,
                               std::size_t forecast_len, double queue_max);

}  // namespace dcsim

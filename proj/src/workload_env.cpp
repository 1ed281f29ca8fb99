#include "dcsim/workload_env.hpp"

#include <algorithm>

#include "dcsim/data_ingest.hpp"
#include "dcsim/observation.hpp"

namespace dcsim {

FlexSplit split_flexible(double load, double flexible_ratio) {
  const double flexible = flexible_ratio * load;
  return {flexible, load - flexible};
}

WorkloadStep step_workload(const WorkloadState& state, LSAction action, double load,
                           const WorkloadParams& params) {
  WorkloadStep out{load, state};
  WorkloadState& next = out.next;
  next.dropped_this_step = 0.0;

  switch (action) {
    case LSAction::Defer: {
      const FlexSplit split = split_flexible(load, params.flexible_ratio);
      const double room = std::max(0.0, params.queue_max - state.queue);
      const double accepted = std::min(split.flexible, room);
      out.executed_load = split.inflexible;
      next.queue = state.queue + accepted;
      next.pending = state.pending + accepted;
      next.dropped_this_step = split.flexible - accepted;
      break;
    }
    case LSAction::DoNothing:
      break;
    case LSAction::ProcessQueue: {
      const double executed = std::min(state.queue, std::max(0.0, params.capacity - load));
      const double carried = state.queue - state.pending;
      out.executed_load = load + executed;
      next.queue = state.queue - executed;
      next.pending = std::max(0.0, state.pending - std::max(0.0, executed - carried));
      break;
    }
  }

  const int steps_per_day = 24 * params.steps_per_hour;
  next.step_in_day = (state.step_in_day + 1) % steps_per_day;
  if (next.step_in_day == 0) next.pending = 0.0;
  next.pending = std::min(next.pending, next.queue);
  return out;
}

double ls_penalty(const WorkloadState& state, int step_in_day, int steps_per_hour) {
  const int steps_per_day = 24 * steps_per_hour;
  double penalty = state.dropped_this_step * kPenaltyPerDroppedTask;
  if (step_in_day % steps_per_day >= 23 * steps_per_hour) {
    const double day_fraction = static_cast<double>(step_in_day % steps_per_day) / steps_per_day;
    const double ramp = (day_fraction - kQueueRampStart) / (kQueueRampEnd - kQueueRampStart);
    penalty += -1.0 * ramp * state.queue / 10.0;
  }
  return penalty;
}

std::vector<double> observe_ls(const WorkloadState& state, std::size_t t,
                               const SeriesBundle& bundle, double battery_soc,
                               std::size_t forecast_len, double queue_max) {
  const obs::LsLayout layout{forecast_len};
  std::vector<double> v(layout.size());
  const TimeFeatures tf = time_features(t, bundle.steps_per_hour);
  v[obs::kSinHour] = tf.sin_hour;
  v[obs::kCosHour] = tf.cos_hour;
  v[obs::kSinDay] = tf.sin_day;
  v[obs::kCosDay] = tf.cos_day;
  v[obs::LsLayout::kWorkload] = bundle.workload[bundle.index(t)];
  v[obs::LsLayout::kQueue] = state.queue / queue_max;
  const auto window = forecast_window(bundle.ci, t, forecast_len);
  const double scale = bundle.ci_max > 0.0 ? bundle.ci_max : 1.0;
  for (std::size_t k = 0; k < window.size(); ++k) {
    v[obs::LsLayout::kCiBegin + k] = window[k] / scale;
  }
  v[layout.soc()] = battery_soc;
  return v;
}

}  // namespace dcsim

#include "dcsim/reward_registry.hpp"

#include "dcsim/errors.hpp"

namespace dcsim {

namespace k = reward_keys;

double param(const RewardParams& params, std::string_view key) {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw ContractError("reward parameter '" + std::string(key) + "' was not provided");
  }
  return it->second;
}

double default_ls_reward(const RewardParams& params) {
  const double total_energy = param(params, k::kTotalEnergyWithBattery);
  const double norm_ci = param(params, k::kNormCi);
  const double dcload_min = param(params, k::kDcLoadMin);
  const double dcload_max = param(params, k::kDcLoadMax);
  const double norm_net_dc_load = (total_energy - dcload_min) / (dcload_max - dcload_min);
  const double footprint = -1.0 * norm_ci * norm_net_dc_load;

  const double penalty_per_dropped_task = -10.0;
  const double penalty_dropped_tasks = param(params, k::kTasksDropped) * penalty_per_dropped_task;

  const double tasks_in_queue = param(params, k::kTasksInQueue);
  const auto steps_per_hour = static_cast<long long>(param(params, k::kStepsPerHour));
  const auto current_step = static_cast<long long>(param(params, k::kCurrentHour));
  const long long steps_per_day = 24 * steps_per_hour;
  double penalty_tasks_queue = 0.0;
  if (current_step % steps_per_day >= 23 * steps_per_hour) {
    double factor_hour = static_cast<double>(current_step % steps_per_day) / steps_per_day;
    factor_hour = (factor_hour - 0.95833) / (0.98935 - 0.95833);
    penalty_tasks_queue = -1.0 * factor_hour * tasks_in_queue / 10.0;
  }
  return footprint + (penalty_dropped_tasks + penalty_tasks_queue);
}

double default_dc_reward(const RewardParams& params) {
  return -(param(params, k::kHvacEnergy) + param(params, k::kItEnergy));
}

double default_bat_reward(const RewardParams& params) { return -param(params, k::kFootprint); }

RewardRegistry RewardRegistry::with_defaults() {
  RewardRegistry r;
  r.add({"default_ls_reward",
         {k::kTotalEnergyWithBattery, k::kNormCi, k::kDcLoadMin, k::kDcLoadMax, k::kTasksDropped,
          k::kTasksInQueue, k::kCurrentHour, k::kStepsPerHour},
         default_ls_reward});
  r.add({"default_dc_reward", {k::kHvacEnergy, k::kItEnergy}, default_dc_reward});
  r.add({"default_bat_reward", {k::kFootprint}, default_bat_reward});
  return r;
}

void RewardRegistry::add(RewardSpec spec) {
  if (spec.name.empty()) throw ValidationError("reward", "name must not be empty");
  if (!spec.fn) throw ValidationError("reward." + spec.name, "function is empty");
  if (specs_.contains(spec.name)) {
    throw ValidationError("reward." + spec.name, "already registered");
  }
  std::string name = spec.name;
  specs_.emplace(std::move(name), std::move(spec));
}

const RewardSpec& RewardRegistry::resolve(std::string_view name) const {
  const auto it = specs_.find(name);
  if (it == specs_.end()) {
    std::string known;
    for (const auto& [n, _] : specs_) known += (known.empty() ? "" : ", ") + n;
    throw ValidationError("reward", "unknown reward '" + std::string(name) +
                                        "'; registered: " + known);
  }
  return it->second;
}

bool RewardRegistry::contains(std::string_view name) const { return specs_.contains(name); }

std::vector<std::string> RewardRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : specs_) out.push_back(n);
  return out;
}

}  // namespace dcsim

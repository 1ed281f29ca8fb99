#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dcsim {

/// Named scalar inputs handed to a reward function. Key names follow the
/// reward-creator conventions (`bat_total_energy_with_battery_KWh`,
/// `ls_tasks_dropped`, ...), so rewards written against them port directly.
using RewardParams = std::map<std::string, double, std::less<>>;

/// Throws ContractError if `key` is absent.
double param(const RewardParams& params, std::string_view key);

struct RewardSpec {
  std::string name;
  /// Keys the function reads; the orchestrator guarantees they are present.
  std::vector<std::string> keys;
  std::function<double(const RewardParams&)> fn;
};

namespace reward_keys {
inline constexpr const char* kTotalEnergyWithBattery = "bat_total_energy_with_battery_KWh";
inline constexpr const char* kNormCi = "norm_CI";
inline constexpr const char* kDcLoadMin = "bat_dcload_min";
inline constexpr const char* kDcLoadMax = "bat_dcload_max";
// Spelling used in the published reward code; populated as an alias.
inline constexpr const char* kDcLoadMinAlias = "bat_dcloud_min";
inline constexpr const char* kDcLoadMaxAlias = "bat_dcloud_max";
inline constexpr const char* kTasksDropped = "ls_tasks_dropped";
inline constexpr const char* kTasksInQueue = "ls_tasks_in_queue";
inline constexpr const char* kCurrentHour = "ls_current_hour";  // step counter, as in the original
inline constexpr const char* kStepsPerHour = "ls_steps_per_hour";
inline constexpr const char* kPendingTasks = "ls_pending_tasks";
inline constexpr const char* kOriginalWorkload = "ls_original_workload";
inline constexpr const char* kShiftedWorkload = "ls_shifted_workload";
inline constexpr const char* kHvacEnergy = "dc_HVAC_total_energy_KWh";
inline constexpr const char* kItEnergy = "dc_ITE_total_energy_KWh";
inline constexpr const char* kWater = "dc_water_usage_liters";
inline constexpr const char* kSetpoint = "dc_crac_setpoint";
inline constexpr const char* kBatteryEnergy = "bat_energy_KWh";
inline constexpr const char* kSoc = "bat_SOC";
inline constexpr const char* kFootprint = "bat_CO2_footprint_kg";
inline constexpr const char* kCi = "CI_gCO2_per_kWh";
}  // namespace reward_keys

double default_ls_reward(const RewardParams& params);
double default_dc_reward(const RewardParams& params);
double default_bat_reward(const RewardParams& params);

/// Name → reward function map. Built once at startup and then shared
/// read-only.
class RewardRegistry {
 public:
  /// Registry holding default_ls_reward, default_dc_reward and
  /// default_bat_reward.
  static RewardRegistry with_defaults();

  /// Throws ValidationError if the name is already taken or fn is empty.
  void add(RewardSpec spec);

  /// Throws ValidationError listing the registered names when absent.
  const RewardSpec& resolve(std::string_view name) const;

  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, RewardSpec, std::less<>> specs_;
};

}  // namespace dcsim

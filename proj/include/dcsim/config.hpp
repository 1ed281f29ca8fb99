#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcsim/battery_env.hpp"

namespace dcsim {

/// Server electrical rating, one per rack position: [full_load_W, idle_W].
struct ServerPower {
  double full_load_w = 0.0;
  double idle_w = 0.0;
  bool operator==(const ServerPower&) const = default;
};

/// A ratio pair [ratio at load 0, ratio at load 1].
struct LoadRatio {
  double at_idle = 0.0;
  double at_full = 0.0;
  bool operator==(const LoadRatio&) const = default;
};

struct TempRange {
  double min_c = 0.0;
  double max_c = 0.0;
  bool operator==(const TempRange&) const = default;
};

/// Physical plant description. Field names follow the upper-case keys of the
/// `dc_config.json` sections they are read from.
struct DCPhysicalConfig {
  // data_center_configuration
  int num_rows = 4;
  int num_racks_per_row = 5;
  std::vector<double> rack_supply_approach_temp;
  std::vector<double> rack_return_approach_temp;
  int cpus_per_rack = 200;

  // hvac_configuration
  double c_air = 1006.0;
  double rho_air = 1.225;
  double crac_supply_air_flow_rate_pu = 0.00005663;
  double crac_reference_air_flow_rate_pu = 0.00009438;
  double crac_fan_ref_p = 150.0;
  double chiller_cop_base = 5.0;
  double chiller_cop_k = 0.1;
  double chiller_cop_t_nominal = 25.0;
  double ct_fan_ref_p = 1000.0;
  double ct_reference_air_flow_rate = 2.8315;
  double cw_pressure_drop = 300000.0;
  double cw_water_flow_rate = 0.0011;
  double cw_pump_efficiency = 0.87;
  double ct_pressure_drop = 300000.0;
  double ct_water_flow_rate = 0.0011;
  double ct_pump_efficiency = 0.87;
  // Extensions to the published key set.
  double ct_drift_rate = 0.002;
  double cooling_sizing_factor = 1.1;
  bool include_pump_power = true;
  bool include_crac_fan_power = true;

  // server_characteristics
  LoadRatio cpu_power_ratio_lb{0.01, 1.00};
  LoadRatio cpu_power_ratio_ub{0.03, 1.02};
  LoadRatio it_fan_airflow_ratio_lb{0.01, 0.225};
  LoadRatio it_fan_airflow_ratio_ub{0.225, 1.0};
  double it_fan_full_load_v = 0.051;
  double itfan_ref_v_ratio = 1.0;
  double itfan_ref_p = 10.0;
  TempRange inlet_temp_range{16.0, 28.0};
  /// Expanded to exactly one entry per rack position after loading.
  std::vector<ServerPower> server_characteristics;

  std::size_t num_racks() const {
    return static_cast<std::size_t>(num_rows) * static_cast<std::size_t>(num_racks_per_row);
  }
  int total_cpus() const { return num_rows * num_racks_per_row * cpus_per_rack; }

  bool operator==(const DCPhysicalConfig&) const = default;
};

struct SetpointLimits {
  double lower_c = 16.0;
  double upper_c = 23.0;
  double increment_c = 1.0;
  bool operator==(const SetpointLimits&) const = default;
};

/// Everything needed to run one experiment.
struct ScenarioConfig {
  DCPhysicalConfig plant;

  std::filesystem::path workload_path;
  std::filesystem::path ci_path;
  std::filesystem::path weather_path;

  int steps_per_hour = 4;
  /// Hourly rows each input trace must contain.
  int trace_hours = 8760;
  int horizon_steps = 2976;
  int start_step = 0;
  double flexible_ratio = 0.2;
  int forecast_len = 12;
  double queue_max = 500.0;
  double initial_setpoint_c = 20.0;
  SetpointLimits setpoint;

  BatteryParams battery;
  double battery_initial_soc = 0.0;

  double reward_alpha = 0.8;
  std::string ls_reward = "default_ls_reward";
  std::string dc_reward = "default_dc_reward";
  std::string bat_reward = "default_bat_reward";
  std::uint64_t seed = 0;

  /// Sections and keys not recognised above, kept verbatim so they survive a
  /// load/save cycle.
  nlohmann::json extras = nlohmann::json::object();
  /// Non-fatal notes produced while loading (e.g. surplus server entries).
  std::vector<std::string> warnings;

  double step_hours() const { return 1.0 / steps_per_hour; }
  int steps_per_day() const { return 24 * steps_per_hour; }

  bool operator==(const ScenarioConfig& other) const;
};

/// Built-in scenario carrying the published plant defaults.
ScenarioConfig default_scenario();

/// Reads a JSON scenario file. Relative data paths are resolved against the
/// file's directory. Throws ParseError or ValidationError.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Same as load_scenario but from an already-parsed document.
ScenarioConfig scenario_from_json(const nlohmann::json& doc,
                                  const std::filesystem::path& base_dir = {});

/// Serialises with the same key names load_scenario accepts.
nlohmann::json to_json(const ScenarioConfig& config);

/// Throws ValidationError naming the first offending field.
void validate(const ScenarioConfig& config);

}  // namespace dcsim

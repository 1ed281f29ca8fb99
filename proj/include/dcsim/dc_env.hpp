#pragma once

#include <span>
#include <vector>

#include "dcsim/config.hpp"

namespace dcsim {

enum class DCAction : int { Decrease = 0, Maintain = 1, Increase = 2 };

/// Setpoint plus what the previous step produced.
struct PlantState {
  double setpoint_c = 20.0;
  double last_e_hvac_kwh = 0.0;
  double last_e_it_kwh = 0.0;
  double last_return_temp_c = 0.0;
  double last_room_temp_c = 0.0;
  double last_water_liters = 0.0;

  bool operator==(const PlantState&) const = default;
};

/// Cooling-side powers for one step, W.
struct HvacPower {
  double p_cool = 0.0;
  double p_chiller = 0.0;
  double v_ct = 0.0;  // m³/s
  double p_ct = 0.0;
  double p_pumps = 0.0;
  double p_hvac = 0.0;
};

/// Full steady-state evaluation of the plant for one step.
struct StepPowerBreakdown {
  double p_cpu_total = 0.0;
  double p_itfan_total = 0.0;
  double p_datacenter = 0.0;  // p_cpu_total + p_itfan_total
  double p_crac_fan = 0.0;    // billed with IT energy when enabled
  double p_cool = 0.0;
  double p_chiller = 0.0;
  double v_ct = 0.0;
  double p_ct = 0.0;
  double p_pumps = 0.0;
  double p_hvac = 0.0;  // p_ct + p_chiller + p_pumps
  double t_return = 0.0;
  double t_room = 0.0;  // mean rack outlet temperature
  double water_liters = 0.0;
};

/// Rack IT fans at one operating point.
struct FanPoint {
  double power_w = 0.0;
  double airflow_m3s = 0.0;
};

std::vector<double> inlet_temps(double setpoint_c, std::span<const double> supply_approach);

/// Two-stage interpolation of a [lb, ub] ratio band: each endpoint pair is
/// first interpolated across the inlet range (clamped), then across load.
double load_temp_ratio(double inlet_c, double load, const LoadRatio& lb, const LoadRatio& ub,
                       const TempRange& inlet_range);

/// CPU power of one rack (all its CPUs), W, floored at idle power.
double cpu_power(double inlet_c, double load, const ServerPower& server,
                 const DCPhysicalConfig& cfg);

/// IT fan power (cube law) and airflow of one rack.
FanPoint itfan_power(double inlet_c, double load, const DCPhysicalConfig& cfg);

std::vector<double> outlet_temps(std::span<const double> inlet_c,
                                 std::span<const double> rack_power_w,
                                 std::span<const double> airflow_m3s, double c_air,
                                 double rho_air);

double crac_return_temp(std::span<const double> outlet_c, std::span<const double> return_approach);

/// Chiller COP, linear in ambient dry-bulb and floored at 1.
double chiller_cop(double t_db_c, const DCPhysicalConfig& cfg);
/// Cooling-tower approach delta, K. Floored at 2 K.
double cooling_tower_delta(double t_db_c);
double cooling_tower_fan_power(double v_ct, const DCPhysicalConfig& cfg);
/// Hydraulic power of both water loops, W (constant flow).
double pump_power(const DCPhysicalConfig& cfg);
/// Mass flow through the fixed-speed CRAC fan, kg/s.
double crac_mass_flow(const DCPhysicalConfig& cfg);

HvacPower hvac_chain(double t_return_c, double setpoint_c, double t_db_c,
                     const DCPhysicalConfig& cfg, double max_cooling_w);

/// Maximum cooling capacity, W: sizing factor × IT power at full load and the
/// top of the inlet range.
double size_cooling(const DCPhysicalConfig& cfg);

double water_usage(double t_return_c, double setpoint_c, double wet_bulb_c, double drift_rate,
                   double steps_per_hour);

/// Runs the inlet → power → outlet → return → HVAC → water chain.
StepPowerBreakdown evaluate_plant(double setpoint_c, double load, double t_db_c,
                                  double wet_bulb_c, const DCPhysicalConfig& cfg,
                                  double max_cooling_w, double dt_hours);

double apply_setpoint_action(double setpoint_c, DCAction action, const SetpointLimits& limits);

struct DCStep {
  double e_hvac_kwh = 0.0;
  double e_it_kwh = 0.0;
  PlantState next;
  StepPowerBreakdown power;
};

DCStep step_dc(const PlantState& state, DCAction action, double load, double t_db_c,
               double wet_bulb_c, const DCPhysicalConfig& cfg, const SetpointLimits& limits,
               double dt_hours, double max_cooling_w);

/// IT-side electrical power billed as E_it: p_datacenter plus the CRAC fan
/// when enabled.
double it_side_power(const StepPowerBreakdown& p);

}  // namespace dcsim

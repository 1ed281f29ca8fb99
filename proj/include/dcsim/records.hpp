#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dcsim {

struct RewardTriple {
  double ls = 0.0;
  double dc = 0.0;
  double bat = 0.0;
  bool operator==(const RewardTriple&) const = default;
};

/// Everything that happened in one joint step. Energies in kWh, carbon in
/// kgCO2, CI in gCO2/kWh, water in liters, queue amounts in task-units.
struct StepRecord {
  std::size_t t = 0;
  double workload = 0.0;       // B_t
  double executed_load = 0.0;  // B_hat
  double e_it_kwh = 0.0;
  double e_hvac_kwh = 0.0;
  double e_bat_kwh = 0.0;
  double ci = 0.0;
  double cfp_kg = 0.0;
  double water_liters = 0.0;
  double queue = 0.0;
  double dropped = 0.0;
  RewardTriple reward;
  RewardTriple mixed;
  double setpoint_c = 0.0;
  double soc = 0.0;
  // Diagnostics beyond the headline fields.
  double pending = 0.0;
  double ls_penalty = 0.0;
  int step_in_day = 0;
  double t_db_c = 0.0;
  double wet_bulb_c = 0.0;
  double t_room_c = 0.0;
  double t_return_c = 0.0;
  int action_ls = 1;
  int action_dc = 1;
  int action_bat = 1;

  bool operator==(const StepRecord&) const = default;
};

/// CO2 attributed to grid energy for one step: (E_it + E_hvac + E_bat) * CI,
/// grams converted to kilograms.
inline double carbon_footprint_kg(double e_it_kwh, double e_hvac_kwh, double e_bat_kwh,
                                  double ci_g_per_kwh) {
  return (e_it_kwh + e_hvac_kwh + e_bat_kwh) * ci_g_per_kwh / 1000.0;
}

}  // namespace dcsim

#pragma once

namespace dcsim {

/// Battery bank ratings. Rate caps follow P_max = u * p_max + v.
struct BatteryParams {
  double capacity_kwh = 1000.0;
  double eta_charge = 0.95;
  double eta_discharge = 0.95;
  double p_charge_max_kw = 300.0;
  double p_discharge_max_kw = 300.0;
  double u = 1.0;
  double v = 0.0;

  double charge_cap_kw() const { return u * p_charge_max_kw + v; }
  double discharge_cap_kw() const { return u * p_discharge_max_kw + v; }

  bool operator==(const BatteryParams&) const = default;
};

/// Throws ValidationError (field prefixed with "battery.").
void validate(const BatteryParams& params);

struct BatteryState {
  double stored_kwh = 0.0;

  double soc(const BatteryParams& params) const { return stored_kwh / params.capacity_kwh; }
  bool operator==(const BatteryState&) const = default;
};

enum class BatAction : int { Charge = 0, Idle = 1, Discharge = 2 };

struct BatteryRates {
  double charge_kw = 0.0;
  double discharge_kw = 0.0;
};

/// Largest admissible charge and discharge rates for one step of `dt_hours`.
/// Both are >= 0 and never move the stored energy outside [0, capacity].
BatteryRates max_rates(const BatteryState& state, const BatteryParams& params, double dt_hours);

struct BatteryStep {
  BatteryState next;
  /// Grid-side energy drawn while charging (> 0), load-side energy supplied
  /// while discharging (< 0), 0 when idle.
  double energy_kwh = 0.0;
};

BatteryStep step_battery(const BatteryState& state, BatAction action,
                         const BatteryParams& params, double dt_hours);

}  // namespace dcsim

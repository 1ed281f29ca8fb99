#include "dcsim/battery_env.hpp"

#include <algorithm>
#include <cmath>

#include "dcsim/errors.hpp"

namespace dcsim {

namespace {

void require(bool ok, const char* field, const char* constraint) {
  if (!ok) throw ValidationError(std::string("battery.") + field, constraint);
}

}  // namespace

void validate(const BatteryParams& p) {
  require(p.capacity_kwh > 0.0 && std::isfinite(p.capacity_kwh), "capacity_kwh", "must be > 0");
  require(p.eta_charge > 0.0 && p.eta_charge <= 1.0, "eta_charge", "must be in (0, 1]");
  require(p.eta_discharge > 0.0 && p.eta_discharge <= 1.0, "eta_discharge", "must be in (0, 1]");
  require(p.p_charge_max_kw >= 0.0 && std::isfinite(p.p_charge_max_kw), "p_charge_max_kw",
          "must be >= 0");
  require(p.p_discharge_max_kw >= 0.0 && std::isfinite(p.p_discharge_max_kw),
          "p_discharge_max_kw", "must be >= 0");
  require(std::isfinite(p.u) && std::isfinite(p.v), "u", "u and v must be finite");
  require(p.charge_cap_kw() >= 0.0, "u", "u * p_charge_max_kw + v must be >= 0");
  require(p.discharge_cap_kw() >= 0.0, "u", "u * p_discharge_max_kw + v must be >= 0");
}

BatteryRates max_rates(const BatteryState& state, const BatteryParams& p, double dt_hours) {
  const double headroom = std::max(0.0, p.capacity_kwh - state.stored_kwh);
  const double stored = std::max(0.0, state.stored_kwh);
  BatteryRates rates;
  rates.charge_kw = std::min(headroom / (p.eta_charge * dt_hours), p.charge_cap_kw());
  // The discharge rate is measured on the storage side, so the stored energy
  // alone bounds it.
  rates.discharge_kw = std::min(stored / dt_hours, p.discharge_cap_kw());
  return rates;
}

BatteryStep step_battery(const BatteryState& state, BatAction action, const BatteryParams& p,
                         double dt_hours) {
  BatteryStep out{state, 0.0};
  const BatteryRates rates = max_rates(state, p, dt_hours);
  switch (action) {
    case BatAction::Charge:
      out.next.stored_kwh = state.stored_kwh + rates.charge_kw * p.eta_charge * dt_hours;
      out.energy_kwh = rates.charge_kw * dt_hours;
      break;
    case BatAction::Idle:
      break;
    case BatAction::Discharge:
      out.next.stored_kwh = state.stored_kwh - rates.discharge_kw * dt_hours;
      out.energy_kwh = -rates.discharge_kw * p.eta_discharge * dt_hours;
      break;
  }
  // Rounding in the rate division can leave a residue of a few ulps.
  out.next.stored_kwh = std::clamp(out.next.stored_kwh, 0.0, p.capacity_kwh);
  return out;
}

}  // namespace dcsim

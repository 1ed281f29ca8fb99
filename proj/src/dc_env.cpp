#include "dcsim/dc_env.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dcsim/errors.hpp"

namespace dcsim {

namespace {

double lerp(double a, double b, double t) { return a + t * (b - a); }

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DomainError(std::string(what) + ": list lengths differ (" + std::to_string(a) +
                      " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

std::vector<double> inlet_temps(double setpoint_c, std::span<const double> supply_approach) {
  std::vector<double> out(supply_approach.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = supply_approach[i] + setpoint_c;
  return out;
}

double load_temp_ratio(double inlet_c, double load, const LoadRatio& lb, const LoadRatio& ub,
                       const TempRange& range) {
  const double s = std::clamp((inlet_c - range.min_c) / (range.max_c - range.min_c), 0.0, 1.0);
  const double at_idle = lerp(lb.at_idle, ub.at_idle, s);
  const double at_full = lerp(lb.at_full, ub.at_full, s);
  return lerp(at_idle, at_full, load);
}

double cpu_power(double inlet_c, double load, const ServerPower& server,
                 const DCPhysicalConfig& cfg) {
  const double ratio = load_temp_ratio(inlet_c, load, cfg.cpu_power_ratio_lb,
                                       cfg.cpu_power_ratio_ub, cfg.inlet_temp_range);
  const double per_cpu = std::max(ratio * server.full_load_w, server.idle_w);
  return per_cpu * cfg.cpus_per_rack;
}

FanPoint itfan_power(double inlet_c, double load, const DCPhysicalConfig& cfg) {
  const double v = load_temp_ratio(inlet_c, load, cfg.it_fan_airflow_ratio_lb,
                                   cfg.it_fan_airflow_ratio_ub, cfg.inlet_temp_range);
  const double speed = v / cfg.itfan_ref_v_ratio;
  FanPoint fan;
  fan.power_w = cfg.itfan_ref_p * speed * speed * speed * cfg.cpus_per_rack;
  fan.airflow_m3s = v * cfg.it_fan_full_load_v * cfg.cpus_per_rack;
  return fan;
}

std::vector<double> outlet_temps(std::span<const double> inlet_c,
                                 std::span<const double> rack_power_w,
                                 std::span<const double> airflow_m3s, double c_air,
                                 double rho_air) {
  require_same_size(inlet_c.size(), rack_power_w.size(), "outlet_temps");
  require_same_size(inlet_c.size(), airflow_m3s.size(), "outlet_temps");
  std::vector<double> out(inlet_c.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (rack_power_w[i] == 0.0) {
      out[i] = inlet_c[i];
      continue;
    }
    if (!(airflow_m3s[i] > 0.0)) {
      throw DomainError("outlet_temps: rack " + std::to_string(i) +
                        " dissipates power with zero airflow");
    }
    out[i] = inlet_c[i] + rack_power_w[i] / (c_air * rho_air * airflow_m3s[i]);
  }
  return out;
}

double crac_return_temp(std::span<const double> outlet_c,
                        std::span<const double> return_approach) {
  require_same_size(outlet_c.size(), return_approach.size(), "crac_return_temp");
  if (outlet_c.empty()) throw DomainError("crac_return_temp: no racks");
  double sum = 0.0;
  for (std::size_t i = 0; i < outlet_c.size(); ++i) sum += return_approach[i] + outlet_c[i];
  return sum / static_cast<double>(outlet_c.size());
}

double chiller_cop(double t_db_c, const DCPhysicalConfig& cfg) {
  return std::max(1.0, cfg.chiller_cop_base - cfg.chiller_cop_k * (t_db_c - cfg.chiller_cop_t_nominal));
}

double cooling_tower_delta(double t_db_c) { return std::max(2.0, 0.2 * t_db_c + 2.0); }

double cooling_tower_fan_power(double v_ct, const DCPhysicalConfig& cfg) {
  const double ratio = v_ct / cfg.ct_reference_air_flow_rate;
  return cfg.ct_fan_ref_p * ratio * ratio * ratio;
}

double pump_power(const DCPhysicalConfig& cfg) {
  return cfg.cw_pressure_drop * cfg.cw_water_flow_rate / cfg.cw_pump_efficiency +
         cfg.ct_pressure_drop * cfg.ct_water_flow_rate / cfg.ct_pump_efficiency;
}

double crac_mass_flow(const DCPhysicalConfig& cfg) {
  return cfg.rho_air * cfg.crac_supply_air_flow_rate_pu * cfg.total_cpus();
}

HvacPower hvac_chain(double t_return_c, double setpoint_c, double t_db_c,
                     const DCPhysicalConfig& cfg, double max_cooling_w) {
  if (!std::isfinite(t_db_c)) throw DomainError("hvac_chain: non-finite dry-bulb temperature");
  const double delta = cooling_tower_delta(t_db_c);
  if (!(delta > 0.0)) throw DomainError("hvac_chain: cooling-tower delta must be > 0");

  HvacPower h;
  const double p_cool = crac_mass_flow(cfg) * cfg.c_air * (t_return_c - setpoint_c);
  h.p_cool = std::clamp(p_cool, 0.0, max_cooling_w);
  h.p_chiller = h.p_cool * (1.0 + 1.0 / chiller_cop(t_db_c, cfg));
  h.v_ct = h.p_chiller / (cfg.c_air * cfg.rho_air * delta);
  h.p_ct = cooling_tower_fan_power(h.v_ct, cfg);
  h.p_pumps = cfg.include_pump_power ? pump_power(cfg) : 0.0;
  h.p_hvac = h.p_ct + h.p_chiller + h.p_pumps;
  return h;
}

double size_cooling(const DCPhysicalConfig& cfg) {
  const double inlet = cfg.inlet_temp_range.max_c;
  double it_power = 0.0;
  for (const ServerPower& server : cfg.server_characteristics) {
    it_power += cpu_power(inlet, 1.0, server, cfg) + itfan_power(inlet, 1.0, cfg).power_w;
  }
  return cfg.cooling_sizing_factor * it_power;
}

double water_usage(double t_return_c, double setpoint_c, double wet_bulb_c, double drift_rate,
                   double steps_per_hour) {
  const double range = t_return_c - setpoint_c;
  const double normalized = 0.044 * wet_bulb_c + (0.35 * range + 0.1);
  const double usage = std::max(0.0, normalized) + normalized * drift_rate;
  return usage * 1000.0 / steps_per_hour;
}

StepPowerBreakdown evaluate_plant(double setpoint_c, double load, double t_db_c,
                                  double wet_bulb_c, const DCPhysicalConfig& cfg,
                                  double max_cooling_w, double dt_hours) {
  const std::size_t racks = cfg.num_racks();
  const std::vector<double> inlets = inlet_temps(setpoint_c, cfg.rack_supply_approach_temp);

  StepPowerBreakdown p;
  std::vector<double> rack_power(racks);
  std::vector<double> airflow(racks);
  for (std::size_t i = 0; i < racks; ++i) {
    const double cpu = cpu_power(inlets[i], load, cfg.server_characteristics[i], cfg);
    const FanPoint fan = itfan_power(inlets[i], load, cfg);
    p.p_cpu_total += cpu;
    p.p_itfan_total += fan.power_w;
    rack_power[i] = cpu + fan.power_w;
    airflow[i] = fan.airflow_m3s;
  }
  p.p_datacenter = p.p_cpu_total + p.p_itfan_total;
  p.p_crac_fan = cfg.include_crac_fan_power ? cfg.crac_fan_ref_p : 0.0;

  const std::vector<double> outlets =
      outlet_temps(inlets, rack_power, airflow, cfg.c_air, cfg.rho_air);
  p.t_return = crac_return_temp(outlets, cfg.rack_return_approach_temp);
  double outlet_sum = 0.0;
  for (double t : outlets) outlet_sum += t;
  p.t_room = outlet_sum / static_cast<double>(outlets.size());

  const HvacPower h = hvac_chain(p.t_return, setpoint_c, t_db_c, cfg, max_cooling_w);
  p.p_cool = h.p_cool;
  p.p_chiller = h.p_chiller;
  p.v_ct = h.v_ct;
  p.p_ct = h.p_ct;
  p.p_pumps = h.p_pumps;
  p.p_hvac = h.p_hvac;
  p.water_liters = water_usage(p.t_return, setpoint_c, wet_bulb_c, cfg.ct_drift_rate,
                               1.0 / dt_hours);
  return p;
}

double apply_setpoint_action(double setpoint_c, DCAction action, const SetpointLimits& limits) {
  double next = setpoint_c;
  if (action == DCAction::Decrease) next -= limits.increment_c;
  if (action == DCAction::Increase) next += limits.increment_c;
  return std::clamp(next, limits.lower_c, limits.upper_c);
}

double it_side_power(const StepPowerBreakdown& p) { return p.p_datacenter + p.p_crac_fan; }

DCStep step_dc(const PlantState& state, DCAction action, double load, double t_db_c,
               double wet_bulb_c, const DCPhysicalConfig& cfg, const SetpointLimits& limits,
               double dt_hours, double max_cooling_w) {
  DCStep out;
  out.next = state;
  out.next.setpoint_c = apply_setpoint_action(state.setpoint_c, action, limits);
  out.power = evaluate_plant(out.next.setpoint_c, load, t_db_c, wet_bulb_c, cfg, max_cooling_w,
                             dt_hours);
  out.e_hvac_kwh = out.power.p_hvac * dt_hours / 1000.0;
  out.e_it_kwh = it_side_power(out.power) * dt_hours / 1000.0;
  out.next.last_e_hvac_kwh = out.e_hvac_kwh;
  out.next.last_e_it_kwh = out.e_it_kwh;
  out.next.last_return_temp_c = out.power.t_return;
  out.next.last_room_temp_c = out.power.t_room;
  out.next.last_water_liters = out.power.water_liters;
  return out;
}

}  // namespace dcsim

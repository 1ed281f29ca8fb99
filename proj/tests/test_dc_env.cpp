#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dcsim/config.hpp"
#include "dcsim/dc_env.hpp"
#include "dcsim/errors.hpp"

using namespace dcsim;

namespace {

DCPhysicalConfig plant() { return default_scenario().plant; }

bool close_rel(double a, double b, double tol = 1e-6) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("inlet temperatures") {
  const std::vector<double> approach = {5.3, 5.0};
  const auto in = inlet_temps(18.0, approach);
  REQUIRE(in.size() == 2);
  CHECK(in[0] == doctest::Approx(23.3).epsilon(1e-12));
  CHECK(in[1] == 23.0);
  const std::vector<double> zero(5, 0.0);
  for (double t : inlet_temps(21.0, zero)) CHECK(t == 21.0);
}

TEST_CASE("cpu power at the ends of the band") {
  const DCPhysicalConfig cfg = plant();
  const ServerPower s{170, 20};
  CHECK(cpu_power(16.0, 1.0, s, cfg) == doctest::Approx(170.0 * 200).epsilon(1e-12));
  CHECK(cpu_power(28.0, 1.0, s, cfg) == doctest::Approx(173.4 * 200).epsilon(1e-12));
  // 0.01 * 170 = 1.7 W is below the 20 W idle floor.
  CHECK(cpu_power(16.0, 0.0, s, cfg) == 20.0 * 200);
  const ServerPower no_idle{170, 0};
  CHECK(cpu_power(16.0, 0.0, no_idle, cfg) == doctest::Approx(1.7 * 200).epsilon(1e-12));
  // Inlet beyond the range is clamped.
  CHECK(cpu_power(40.0, 1.0, s, cfg) == cpu_power(28.0, 1.0, s, cfg));
}

TEST_CASE("IT fan cube law") {
  DCPhysicalConfig cfg = plant();
  const FanPoint full = itfan_power(28.0, 1.0, cfg);
  CHECK(full.power_w == doctest::Approx(10.0 * 200).epsilon(1e-12));
  CHECK(full.airflow_m3s == doctest::Approx(0.051 * 200).epsilon(1e-12));
  cfg.itfan_ref_v_ratio = 2.0;
  CHECK(itfan_power(28.0, 1.0, cfg).power_w == doctest::Approx(10.0 / 8 * 200).epsilon(1e-12));
}

TEST_CASE("outlet temperatures") {
  const std::vector<double> in = {20.0, 20.0};
  const std::vector<double> power = {10000.0, 0.0};
  const std::vector<double> flow = {1.0, 1.0};
  const auto out = outlet_temps(in, power, flow, 1006, 1.225);
  CHECK(std::abs(out[0] - 20.0 - 8.114) < 1e-3);
  CHECK(std::abs(out[0] - 20.0 - 10000.0 / (1006 * 1.225)) < 1e-12);
  CHECK(out[1] == 20.0);
  const std::vector<double> double_flow = {2.0, 2.0};
  const auto out2 = outlet_temps(in, power, double_flow, 1006, 1.225);
  CHECK((out2[0] - 20.0) == doctest::Approx((out[0] - 20.0) / 2).epsilon(1e-12));
  const std::vector<double> no_flow = {0.0, 1.0};
  CHECK_THROWS_AS(outlet_temps(in, power, no_flow, 1006, 1.225), DomainError);
}

TEST_CASE("CRAC return temperature") {
  const std::vector<double> outlets = {30, 32};
  const std::vector<double> approach = {-3.7, -2.5};
  CHECK(crac_return_temp(outlets, approach) == doctest::Approx(27.9).epsilon(1e-12));
  const std::vector<double> one = {30};
  const std::vector<double> one_a = {-2.5};
  CHECK(crac_return_temp(one, one_a) == 27.5);
  const std::vector<double> zeros = {0, 0};
  CHECK(crac_return_temp(outlets, zeros) == 31.0);
}

TEST_CASE("HVAC chain oracles") {
  DCPhysicalConfig cfg = plant();
  // m = rho * pu * cpus = 1 * 1 * 10 = 10 kg/s exactly.
  cfg.rho_air = 1.0;
  cfg.crac_supply_air_flow_rate_pu = 1.0;
  cfg.num_rows = 1;
  cfg.num_racks_per_row = 10;
  cfg.cpus_per_rack = 1;
  CHECK(crac_mass_flow(cfg) == 10.0);
  const HvacPower h = hvac_chain(28.0, 20.0, cfg.chiller_cop_t_nominal, cfg, 1e9);
  CHECK(h.p_cool == 80480.0);
  CHECK(chiller_cop(cfg.chiller_cop_t_nominal, cfg) == 5.0);
  CHECK(close_rel(h.p_chiller, 96576.0));
  CHECK(h.p_hvac == h.p_ct + h.p_chiller + h.p_pumps);

  const HvacPower capped = hvac_chain(28.0, 20.0, 25.0, cfg, 50000.0);
  CHECK(capped.p_cool == 50000.0);
  const HvacPower cold = hvac_chain(18.0, 20.0, 25.0, cfg, 1e9);
  CHECK(cold.p_cool == 0.0);
}

TEST_CASE("cooling tower and pumps") {
  const DCPhysicalConfig cfg = plant();
  CHECK(std::abs(cooling_tower_fan_power(2.0, cfg) - 352.4) < 0.5);
  CHECK(close_rel(cooling_tower_fan_power(2.0, cfg), 1000.0 * std::pow(2.0 / 2.8315, 3), 1e-12));
  const double per_loop = 300000.0 * 0.0011 / 0.87;
  CHECK(std::abs(per_loop - 379.3) < 0.05);
  CHECK(close_rel(pump_power(cfg), 2 * per_loop, 1e-12));
  CHECK(cooling_tower_delta(-50.0) == 2.0);
  CHECK(cooling_tower_delta(25.0) == 7.0);
  CHECK(chiller_cop(200.0, cfg) == 1.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = v(rng);
    const double r = x / cfg.ct_reference_air_flow_rate;
    CHECK(close_rel(cooling_tower_fan_power(x, cfg), cfg.ct_fan_ref_p * r * r * r, 1e-12));
  }
}

TEST_CASE("sizing") {
  DCPhysicalConfig cfg = plant();
  double it = 0.0;
  for (const ServerPower& s : cfg.server_characteristics) {
    it += std::max(1.02 * s.full_load_w, s.idle_w) * 200 + 10.0 * 200;
  }
  CHECK(close_rel(size_cooling(cfg), 1.1 * it, 1e-12));
  const double base = size_cooling(cfg);
  cfg.cpus_per_rack *= 2;
  CHECK(close_rel(size_cooling(cfg), 2 * base, 1e-12));
}

TEST_CASE("water usage") {
  CHECK(std::abs(water_usage(25.0, 20.0, 20.0, 0.002, 4) - 683.87) < 0.01);
  CHECK(close_rel(water_usage(25.0, 20.0, 20.0, 0.002, 4), 683.865, 1e-9));
  CHECK(close_rel(water_usage(20.0, 20.0, 0.0, 0.0, 4), 25.0, 1e-12));
  // nwu = -0.88 - 1.75 + 0.1 = -2.53; only the drift term survives.
  CHECK(close_rel(water_usage(15.0, 20.0, -20.0, 0.002, 4), -2.53 * 0.002 * 250, 1e-9));
}

TEST_CASE("setpoint actions clamp") {
  const SetpointLimits lim;
  CHECK(apply_setpoint_action(23.0, DCAction::Increase, lim) == 23.0);
  CHECK(apply_setpoint_action(16.0, DCAction::Decrease, lim) == 16.0);
  CHECK(apply_setpoint_action(20.0, DCAction::Decrease, lim) == 19.0);
  CHECK(apply_setpoint_action(20.0, DCAction::Maintain, lim) == 20.0);
}

TEST_CASE("step_dc at zero load and determinism") {
  const DCPhysicalConfig cfg = plant();
  const double cap = size_cooling(cfg);
  PlantState s;
  const DCStep a = step_dc(s, DCAction::Maintain, 0.0, 25.0, 18.0, cfg, {}, 0.25, cap);
  const DCStep b = step_dc(s, DCAction::Maintain, 0.0, 25.0, 18.0, cfg, {}, 0.25, cap);
  CHECK(a.e_it_kwh == b.e_it_kwh);
  CHECK(a.e_hvac_kwh == b.e_hvac_kwh);
  CHECK(a.next == b.next);

  double idle = cfg.crac_fan_ref_p;
  const auto inlets = inlet_temps(20.0, cfg.rack_supply_approach_temp);
  for (std::size_t i = 0; i < inlets.size(); ++i) {
    idle += cfg.server_characteristics[i].idle_w * 200;  // ratio * full < idle here
    const double s_in = (inlets[i] - 16.0) / 12.0;
    const double v = 0.01 + s_in * (0.225 - 0.01);
    idle += 10.0 * v * v * v * 200;
  }
  CHECK(close_rel(a.e_it_kwh, idle * 0.25 / 1000.0, 1e-12));
  CHECK(a.e_hvac_kwh >= pump_power(cfg) * 0.25 / 1000.0);

  s.setpoint_c = 23.0;
  CHECK(step_dc(s, DCAction::Increase, 0.5, 25.0, 18.0, cfg, {}, 0.25, cap).next.setpoint_c == 23.0);
}

TEST_CASE("monotonicity over setpoint and load") {
  const DCPhysicalConfig cfg = plant();
  const double cap = size_cooling(cfg);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int point = 0; point < 20; ++point) {
    const double load = u(rng);
    const double t_db = -5.0 + 45.0 * u(rng);
    double prev = INFINITY;
    for (double sp = 16.0; sp <= 23.0; sp += 1.0) {
      const double p = evaluate_plant(sp, load, t_db, t_db - 5, cfg, cap, 0.25).p_cool;
      CHECK(p <= prev);
      prev = p;
    }
    const double sp = 16.0 + 7.0 * u(rng);
    double prev_dc = -INFINITY;
    for (double l = 0.0; l <= 1.0 + 1e-12; l += 0.05) {
      const double p = evaluate_plant(sp, l, t_db, t_db - 5, cfg, cap, 0.25).p_datacenter;
      CHECK(p >= prev_dc);
      prev_dc = p;
    }
  }
}

TEST_CASE("fuzzed plant outputs are finite and non-negative") {
  const DCPhysicalConfig cfg = plant();
  const double cap = size_cooling(cfg);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double t_db = -30.0 + 80.0 * u(rng);
    const StepPowerBreakdown p =
        evaluate_plant(16.0 + 7.0 * u(rng), u(rng), t_db, t_db - 10 * u(rng), cfg, cap, 0.25);
    for (double x : {p.p_cpu_total, p.p_itfan_total, p.p_datacenter, p.p_cool, p.p_chiller, p.p_ct,
                     p.p_pumps, p.p_hvac, p.v_ct}) {
      CHECK(std::isfinite(x));
      CHECK(x >= 0.0);
    }
    CHECK(p.p_datacenter == p.p_cpu_total + p.p_itfan_total);
    CHECK(p.p_hvac == p.p_ct + p.p_chiller + p.p_pumps);
    CHECK(p.p_cool <= cap);
  }
}

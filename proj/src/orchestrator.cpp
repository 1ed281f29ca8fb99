#include "dcsim/orchestrator.hpp"

#include <ostream>

#include "dcsim/errors.hpp"
#include "dcsim/observation.hpp"
#include "dcsim/text.hpp"

namespace dcsim {

namespace {

void check_index(int a, const char* agent, std::size_t t) {
  if (a < 0 || a > 2) {
    throw ContractError(std::string(agent) + " emitted action " + std::to_string(a) +
                        " at step " + std::to_string(t) + "; expected 0, 1 or 2");
  }
}

void put_time(std::vector<double>& v, std::size_t t, int steps_per_hour) {
  const TimeFeatures tf = time_features(t, steps_per_hour);
  v[obs::kSinHour] = tf.sin_hour;
  v[obs::kCosHour] = tf.cos_hour;
  v[obs::kSinDay] = tf.sin_day;
  v[obs::kCosDay] = tf.cos_day;
}

void put_ci_window(std::vector<double>& v, std::size_t begin, const SeriesBundle& b,
                   std::size_t t, std::size_t len, double ci_max) {
  const auto window = forecast_window(b.ci, t, len);
  for (std::size_t k = 0; k < window.size(); ++k) v[begin + k] = window[k] / ci_max;
}

}  // namespace

JointAction joint_action_from_indices(int ls, int dc, int bat, std::size_t t) {
  check_index(ls, "agent_ls", t);
  check_index(dc, "agent_dc", t);
  check_index(bat, "agent_bat", t);
  return {static_cast<LSAction>(ls), static_cast<DCAction>(dc), static_cast<BatAction>(bat)};
}

NormalizationBounds normalization_bounds(const ScenarioConfig& config, double max_cooling_w,
                                         double ci_max) {
  const DCPhysicalConfig& plant = config.plant;
  const StepPowerBreakdown idle =
      evaluate_plant(config.setpoint.lower_c, 0.0, plant.chiller_cop_t_nominal, 0.0, plant,
                     max_cooling_w, config.step_hours());
  NormalizationBounds b;
  b.dcload_min_kwh = (it_side_power(idle) + idle.p_pumps) * config.step_hours() / 1000.0;
  b.dcload_max_kwh = max_cooling_w * config.step_hours() / 1000.0;
  b.ci_max = ci_max;
  return b;
}

RewardTriple default_rewards(const StepRecord& r, const NormalizationBounds& b) {
  if (!(b.dcload_min_kwh < b.dcload_max_kwh)) {
    throw DomainError("default_rewards: dcload_min must be below dcload_max");
  }
  if (!(b.ci_max > 0.0)) throw DomainError("default_rewards: ci_max must be > 0");
  const double total = r.e_it_kwh + r.e_hvac_kwh + r.e_bat_kwh;
  const double norm_load = (total - b.dcload_min_kwh) / (b.dcload_max_kwh - b.dcload_min_kwh);
  const double norm_ci = r.ci / b.ci_max;
  RewardTriple out;
  out.ls = -1.0 * norm_ci * norm_load + r.ls_penalty;
  out.dc = -(r.e_hvac_kwh + r.e_it_kwh);
  out.bat = -r.cfp_kg;
  return out;
}

RewardTriple mix_rewards(const RewardTriple& r, double alpha) {
  if (alpha == 1.0) return r;
  const double w = (1.0 - alpha) / 2.0;
  return {alpha * r.ls + w * r.dc + w * r.bat, alpha * r.dc + w * r.ls + w * r.bat,
          alpha * r.bat + w * r.ls + w * r.dc};
}

Environment::Environment(ScenarioConfig config, std::shared_ptr<const SeriesBundle> bundle,
                         std::shared_ptr<const RewardRegistry> registry)
    : config_(std::move(config)), bundle_(std::move(bundle)), registry_(std::move(registry)) {
  validate(config_);
  if (!bundle_ || bundle_->size() == 0) throw ValidationError("data", "series are empty");
  if (bundle_->steps_per_hour != config_.steps_per_hour) {
    throw ValidationError("steps_per_hour", "does not match the loaded series");
  }
  if (!(bundle_->ci_max > 0.0)) throw ValidationError("ci", "maximum CI must be > 0");
  if (!registry_) registry_ = std::make_shared<const RewardRegistry>(RewardRegistry::with_defaults());
  ls_reward_ = &registry_->resolve(config_.ls_reward);
  dc_reward_ = &registry_->resolve(config_.dc_reward);
  bat_reward_ = &registry_->resolve(config_.bat_reward);

  max_cooling_w_ = size_cooling(config_.plant);
  bounds_ = normalization_bounds(config_, max_cooling_w_, bundle_->ci_max);
  if (!(bounds_.dcload_min_kwh < bounds_.dcload_max_kwh)) {
    throw ValidationError("cooling_sizing_factor",
                          "sized capacity does not exceed the idle load; raise the factor");
  }
  workload_params_.flexible_ratio = config_.flexible_ratio;
  workload_params_.queue_max = config_.queue_max;
  workload_params_.steps_per_hour = config_.steps_per_hour;
}

Environment Environment::from_config(const ScenarioConfig& config,
                                     std::shared_ptr<const RewardRegistry> registry) {
  validate(config);
  return Environment(config, std::make_shared<const SeriesBundle>(load_bundle(config)),
                     std::move(registry));
}

WorldState Environment::initial_state(std::size_t start_step) const {
  const SeriesBundle& b = *bundle_;
  const std::size_t i = b.index(start_step);
  WorldState s;
  s.t = start_step;
  s.workload.step_in_day = static_cast<int>(start_step % static_cast<std::size_t>(config_.steps_per_day()));
  s.battery.stored_kwh = config_.battery_initial_soc * config_.battery.capacity_kwh;
  s.plant.setpoint_c = config_.initial_setpoint_c;
  const StepPowerBreakdown p =
      evaluate_plant(s.plant.setpoint_c, b.workload[i], b.dry_bulb[i], b.wet_bulb[i],
                     config_.plant, max_cooling_w_, config_.step_hours());
  s.plant.last_e_hvac_kwh = p.p_hvac * config_.step_hours() / 1000.0;
  s.plant.last_e_it_kwh = it_side_power(p) * config_.step_hours() / 1000.0;
  s.plant.last_return_temp_c = p.t_return;
  s.plant.last_room_temp_c = p.t_room;
  s.plant.last_water_liters = p.water_liters;
  return s;
}

Observations Environment::observe(const WorldState& s) const {
  const SeriesBundle& b = *bundle_;
  const auto L = static_cast<std::size_t>(config_.forecast_len);
  const double soc = s.battery.soc(config_.battery);
  Observations o;
  o.ls = observe_ls(s.workload, s.t, b, soc, L, config_.queue_max);

  const obs::DcLayout dl{L};
  o.dc.assign(dl.size(), 0.0);
  put_time(o.dc, s.t, b.steps_per_hour);
  o.dc[obs::DcLayout::kDryBulb] = b.dry_bulb[b.index(s.t)];
  o.dc[obs::DcLayout::kRoomTemp] = s.plant.last_room_temp_c;
  o.dc[obs::DcLayout::kLastHvacKwh] = s.plant.last_e_hvac_kwh;
  o.dc[obs::DcLayout::kLastItKwh] = s.plant.last_e_it_kwh;
  put_ci_window(o.dc, obs::DcLayout::kCiBegin, b, s.t, L, b.ci_max);

  const obs::BatLayout bl{L};
  o.bat.assign(bl.size(), 0.0);
  put_time(o.bat, s.t, b.steps_per_hour);
  o.bat[obs::BatLayout::kSoc] = soc;
  o.bat[obs::BatLayout::kDcLoad] =
      (s.plant.last_e_it_kwh + s.plant.last_e_hvac_kwh - bounds_.dcload_min_kwh) /
      (bounds_.dcload_max_kwh - bounds_.dcload_min_kwh);
  put_ci_window(o.bat, obs::BatLayout::kCiBegin, b, s.t, L, b.ci_max);
  return o;
}

StepOutcome Environment::step_joint(const WorldState& s, const JointAction& a) const {
  const SeriesBundle& b = *bundle_;
  const std::size_t i = b.index(s.t);
  const double dt = config_.step_hours();

  const WorkloadStep ws = step_workload(s.workload, a.ls, b.workload[i], workload_params_);
  const DCStep dc = step_dc(s.plant, a.dc, ws.executed_load, b.dry_bulb[i], b.wet_bulb[i],
                            config_.plant, config_.setpoint, dt, max_cooling_w_);
  const BatteryStep bat = step_battery(s.battery, a.bat, config_.battery, dt);

  StepOutcome out;
  StepRecord& r = out.record;
  r.t = s.t;
  r.workload = b.workload[i];
  r.executed_load = ws.executed_load;
  r.e_it_kwh = dc.e_it_kwh;
  r.e_hvac_kwh = dc.e_hvac_kwh;
  r.e_bat_kwh = bat.energy_kwh;
  r.ci = b.ci[i];
  r.cfp_kg = carbon_footprint_kg(r.e_it_kwh, r.e_hvac_kwh, r.e_bat_kwh, r.ci);
  r.water_liters = dc.power.water_liters;
  r.queue = ws.next.queue;
  r.dropped = ws.next.dropped_this_step;
  r.setpoint_c = dc.next.setpoint_c;
  r.soc = bat.next.soc(config_.battery);
  r.pending = ws.next.pending;
  r.step_in_day = s.workload.step_in_day;
  r.ls_penalty = ls_penalty(ws.next, s.workload.step_in_day, config_.steps_per_hour);
  r.t_db_c = b.dry_bulb[i];
  r.wet_bulb_c = b.wet_bulb[i];
  r.t_room_c = dc.power.t_room;
  r.t_return_c = dc.power.t_return;
  r.action_ls = static_cast<int>(a.ls);
  r.action_dc = static_cast<int>(a.dc);
  r.action_bat = static_cast<int>(a.bat);

  const RewardParams params = reward_params(r);
  r.reward = {ls_reward_->fn(params), dc_reward_->fn(params), bat_reward_->fn(params)};
  r.mixed = mix_rewards(r.reward, config_.reward_alpha);

  out.next.workload = ws.next;
  out.next.plant = dc.next;
  out.next.battery = bat.next;
  out.next.t = s.t + 1;
  return out;
}

RewardParams Environment::reward_params(const StepRecord& r) const {
  namespace k = reward_keys;
  return {
      {k::kTotalEnergyWithBattery, r.e_it_kwh + r.e_hvac_kwh + r.e_bat_kwh},
      {k::kNormCi, r.ci / bounds_.ci_max},
      {k::kDcLoadMin, bounds_.dcload_min_kwh},
      {k::kDcLoadMax, bounds_.dcload_max_kwh},
      {k::kDcLoadMinAlias, bounds_.dcload_min_kwh},
      {k::kDcLoadMaxAlias, bounds_.dcload_max_kwh},
      {k::kTasksDropped, r.dropped},
      {k::kTasksInQueue, r.queue},
      {k::kCurrentHour, static_cast<double>(r.step_in_day)},
      {k::kStepsPerHour, static_cast<double>(config_.steps_per_hour)},
      {k::kPendingTasks, r.pending},
      {k::kOriginalWorkload, r.workload},
      {k::kShiftedWorkload, r.executed_load},
      {k::kHvacEnergy, r.e_hvac_kwh},
      {k::kItEnergy, r.e_it_kwh},
      {k::kWater, r.water_liters},
      {k::kSetpoint, r.setpoint_c},
      {k::kBatteryEnergy, r.e_bat_kwh},
      {k::kSoc, r.soc},
      {k::kFootprint, r.cfp_kg},
      {k::kCi, r.ci},
  };
}

ControllerSet make_controllers(const ControllerSelection& sel, const ScenarioConfig& config,
                               std::uint64_t seed) {
  const PolicyContext ctx{static_cast<std::size_t>(config.forecast_len), config.steps_per_hour,
                          seed};
  return {make_ls_policy(sel.ls, ctx), make_dc_policy(sel.dc, ctx), make_bat_policy(sel.bat, ctx)};
}

EpisodeResult run_episode(const Environment& env, ControllerSet& c, std::size_t start_step,
                          std::size_t horizon, bool keep_trace) {
  if (horizon == 0) throw ValidationError("horizon_steps", "must be >= 1");
  if (!c.ls || !c.dc || !c.bat) throw ContractError("run_episode: missing controller");
  c.ls->reset();
  c.dc->reset();
  c.bat->reset();

  EpisodeResult result;
  if (keep_trace) result.records.reserve(horizon);
  MetricsAccumulator acc;
  WorldState state = env.initial_state(start_step);
  for (std::size_t k = 0; k < horizon; ++k) {
    const Observations o = env.observe(state);
    const JointAction a =
        joint_action_from_indices(c.ls->act(o.ls), c.dc->act(o.dc), c.bat->act(o.bat), state.t);
    StepOutcome step = env.step_joint(state, a);
    acc.add(step.record);
    if (keep_trace) result.records.push_back(step.record);
    state = step.next;
  }
  result.metrics = acc.result();
  return result;
}

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols = {
      "t",          "B_t",        "B_hat",     "E_it_kWh",   "E_hvac_kWh", "E_bat_kWh",
      "CI_g_per_kWh", "cfp_kg",   "water_liters", "queue",   "dropped",    "r_ls",
      "r_dc",       "r_bat",      "R_ls",      "R_dc",       "R_bat",      "setpoint_c",
      "soc",        "pending",    "ls_penalty", "step_in_day", "t_db_c",   "wet_bulb_c",
      "t_room_c",   "t_return_c", "a_ls",      "a_dc",       "a_bat"};
  return cols;
}

namespace {

std::vector<double> record_values(const StepRecord& r) {
  return {static_cast<double>(r.t),
          r.workload,
          r.executed_load,
          r.e_it_kwh,
          r.e_hvac_kwh,
          r.e_bat_kwh,
          r.ci,
          r.cfp_kg,
          r.water_liters,
          r.queue,
          r.dropped,
          r.reward.ls,
          r.reward.dc,
          r.reward.bat,
          r.mixed.ls,
          r.mixed.dc,
          r.mixed.bat,
          r.setpoint_c,
          r.soc,
          r.pending,
          r.ls_penalty,
          static_cast<double>(r.step_in_day),
          r.t_db_c,
          r.wet_bulb_c,
          r.t_room_c,
          r.t_return_c,
          static_cast<double>(r.action_ls),
          static_cast<double>(r.action_dc),
          static_cast<double>(r.action_bat)};
}

}  // namespace

void write_trace_header(std::ostream& out) {
  const auto& cols = trace_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

void write_trace_row(std::ostream& out, const StepRecord& r) {
  const auto values = record_values(r);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << (i ? "," : "") << text::format_double(values[i]);
  }
  out << '\n';
}

void write_trace_csv(std::ostream& out, const std::vector<StepRecord>& records) {
  write_trace_header(out);
  for (const StepRecord& r : records) write_trace_row(out, r);
}

nlohmann::json to_json(const StepRecord& r) {
  const auto& cols = trace_columns();
  const auto values = record_values(r);
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < cols.size(); ++i) j[cols[i]] = values[i];
  return j;
}

}  // namespace dcsim

#include "dcsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dcsim/errors.hpp"

namespace dcsim {

using nlohmann::json;

namespace {

constexpr const char* kDataCenter = "data_center_configuration";
constexpr const char* kHvac = "hvac_configuration";
constexpr const char* kServers = "server_characteristics";
constexpr const char* kExperiment = "experiment";
constexpr const char* kBattery = "battery";

const std::vector<double> kSupplyApproach = {
    5.3, 5.3, 5.3, 5.3, 5.3, 5.0, 5.0, 5.0, 5.0, 5.0,
    5.0, 5.0, 5.0, 5.0, 5.0, 5.3, 5.3, 5.3, 5.3, 5.3,
};
const std::vector<double> kReturnApproach = {
    -3.7, -3.7, -3.7, -3.7, -3.7, -2.5, -2.5, -2.5, -2.5, -2.5,
    -2.5, -2.5, -2.5, -2.5, -2.5, -3.7, -3.7, -3.7, -3.7, -3.7,
};
// As published: 21 rows for a 20-rack default room.
const std::vector<ServerPower> kServerPower = {
    {170, 20}, {120, 10}, {130, 10}, {130, 10}, {130, 10}, {130, 10}, {130, 10},
    {130, 10}, {130, 10}, {130, 10}, {130, 10}, {130, 10}, {130, 10}, {130, 10},
    {170, 10}, {130, 10}, {130, 10}, {110, 10}, {170, 10}, {170, 10}, {170, 10},
};

std::string join_key(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

// Reads the recognised keys of one JSON object and records which keys were
// consumed; whatever is left over is copied into `extras`.
class SectionReader {
 public:
  SectionReader(const json& obj, std::string name) : obj_(obj), name_(std::move(name)) {
    if (!obj_.is_object()) throw ValidationError(name_, "expected an object");
  }

  bool has(const char* key) const { return obj_.contains(key); }

  const json& raw(const char* key) {
    seen_.insert(key);
    return obj_.at(key);
  }

  void number(const char* key, double& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number()) throw ValidationError(field(key), "expected a number");
    out = v.get<double>();
  }

  void integer(const char* key, int& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ValidationError(field(key), "expected an integer");
    out = v.get<int>();
  }

  void uint64(const char* key, std::uint64_t& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ValidationError(field(key), "expected a non-negative integer");
    }
    out = v.get<std::uint64_t>();
  }

  void boolean(const char* key, bool& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_boolean()) throw ValidationError(field(key), "expected true or false");
    out = v.get<bool>();
  }

  void string(const char* key, std::string& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_string()) throw ValidationError(field(key), "expected a string");
    out = v.get<std::string>();
  }

  void number_list(const char* key, std::vector<double>& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_array()) throw ValidationError(field(key), "expected a list of numbers");
    std::vector<double> values;
    for (const auto& item : v) {
      if (!item.is_number()) throw ValidationError(field(key), "expected a list of numbers");
      values.push_back(item.get<double>());
    }
    out = std::move(values);
  }

  void pair(const char* key, double& first, double& second) {
    if (!has(key)) return;
    std::vector<double> values;
    number_list(key, values);
    if (values.size() != 2) throw ValidationError(field(key), "expected exactly 2 numbers");
    first = values[0];
    second = values[1];
  }

  std::string field(const char* key) const { return join_key(name_, key); }

  json leftovers() const {
    json out = json::object();
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) out[key] = value;
    }
    return out;
  }

 private:
  const json& obj_;
  std::string name_;
  std::set<std::string> seen_;
};

void stash(json& extras, const std::string& section, json leftovers) {
  if (!leftovers.empty()) extras[section] = std::move(leftovers);
}

std::vector<ServerPower> read_server_list(SectionReader& reader, const char* key) {
  const json& v = reader.raw(key);
  const std::string field = reader.field(key);
  if (!v.is_array() || v.empty()) throw ValidationError(field, "expected a non-empty list of [full_load_W, idle_W] pairs");
  std::vector<ServerPower> out;
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
      throw ValidationError(field, "each entry must be a [full_load_W, idle_W] pair");
    }
    out.push_back({row[0].get<double>(), row[1].get<double>()});
  }
  return out;
}

// One entry is replicated to every rack; longer lists are truncated with a
// warning; shorter lists are rejected.
std::vector<ServerPower> expand_servers(std::vector<ServerPower> list, std::size_t racks,
                                        std::vector<std::string>& warnings) {
  const std::string field = std::string(kServers) + ".DEFAULT_SERVER_POWER_CHARACTERISTICS";
  if (list.size() == 1) return std::vector<ServerPower>(racks, list.front());
  if (list.size() < racks) {
    throw ValidationError(field, "has " + std::to_string(list.size()) +
                                     " entries, expected 1 or at least " + std::to_string(racks));
  }
  if (list.size() > racks) {
    warnings.push_back(field + ": " + std::to_string(list.size()) + " entries for " +
                       std::to_string(racks) + " racks; using the first " +
                       std::to_string(racks));
    list.resize(racks);
  }
  return list;
}

std::filesystem::path resolve(const std::string& value, const std::filesystem::path& base) {
  std::filesystem::path p(value);
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return (base / p).lexically_normal();
}

void require(bool ok, const std::string& field, const std::string& constraint) {
  if (!ok) throw ValidationError(field, constraint);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }
bool fraction(double x) { return x > 0.0 && x <= 1.0; }

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

}  // namespace

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  // warnings describe how a file was read, not what it describes.
  return plant == o.plant && workload_path == o.workload_path && ci_path == o.ci_path &&
         weather_path == o.weather_path && steps_per_hour == o.steps_per_hour &&
         trace_hours == o.trace_hours && horizon_steps == o.horizon_steps &&
         start_step == o.start_step && flexible_ratio == o.flexible_ratio &&
         forecast_len == o.forecast_len && queue_max == o.queue_max &&
         initial_setpoint_c == o.initial_setpoint_c && setpoint == o.setpoint &&
         battery == o.battery && battery_initial_soc == o.battery_initial_soc &&
         reward_alpha == o.reward_alpha && ls_reward == o.ls_reward &&
         dc_reward == o.dc_reward && bat_reward == o.bat_reward && seed == o.seed &&
         extras == o.extras;
}

ScenarioConfig default_scenario() {
  ScenarioConfig config;
  config.plant.rack_supply_approach_temp = kSupplyApproach;
  config.plant.rack_return_approach_temp = kReturnApproach;
  config.plant.server_characteristics.assign(kServerPower.begin(),
                                             kServerPower.begin() + kSupplyApproach.size());
  return config;
}

ScenarioConfig scenario_from_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ValidationError("<root>", "expected a JSON object");

  ScenarioConfig config = default_scenario();
  DCPhysicalConfig& plant = config.plant;
  json extras = json::object();

  for (const auto& [key, value] : doc.items()) {
    if (key != kDataCenter && key != kHvac && key != kServers && key != kExperiment) {
      extras[key] = value;
    }
  }

  if (doc.contains(kDataCenter)) {
    SectionReader s(doc.at(kDataCenter), kDataCenter);
    s.integer("NUM_ROWS", plant.num_rows);
    s.integer("NUM_RACKS_PER_ROW", plant.num_racks_per_row);
    s.number_list("RACK_SUPPLY_APPROACH_TEMP_LIST", plant.rack_supply_approach_temp);
    s.number_list("RACK_RETURN_APPROACH_TEMP_LIST", plant.rack_return_approach_temp);
    s.integer("CPUS_PER_RACK", plant.cpus_per_rack);
    stash(extras, kDataCenter, s.leftovers());
  }
  require(plant.num_rows >= 1, join_key(kDataCenter, "NUM_ROWS"), "must be >= 1");
  require(plant.num_racks_per_row >= 1, join_key(kDataCenter, "NUM_RACKS_PER_ROW"),
          "must be >= 1");

  if (doc.contains(kHvac)) {
    SectionReader s(doc.at(kHvac), kHvac);
    s.number("C_AIR", plant.c_air);
    s.number("RHO_AIR", plant.rho_air);
    s.number("CRAC_SUPPLY_AIR_FLOW_RATE_pu", plant.crac_supply_air_flow_rate_pu);
    s.number("CRAC_REFERENCE_AIR_FLOW_RATE_pu", plant.crac_reference_air_flow_rate_pu);
    s.number("CRAC_FAN_REF_P", plant.crac_fan_ref_p);
    s.number("CHILLER_COP_BASE", plant.chiller_cop_base);
    s.number("CHILLER_COP_K", plant.chiller_cop_k);
    s.number("CHILLER_COP_T_NOMINAL", plant.chiller_cop_t_nominal);
    s.number("CT_FAN_REF_P", plant.ct_fan_ref_p);
    s.number("CT_REFERENCE_AIR_FLOW_RATE", plant.ct_reference_air_flow_rate);
    s.number("CW_PRESSURE_DROP", plant.cw_pressure_drop);
    s.number("CW_WATER_FLOW_RATE", plant.cw_water_flow_rate);
    s.number("CW_PUMP_EFFICIENCY", plant.cw_pump_efficiency);
    s.number("CT_PRESSURE_DROP", plant.ct_pressure_drop);
    s.number("CT_WATER_FLOW_RATE", plant.ct_water_flow_rate);
    s.number("CT_PUMP_EFFICIENCY", plant.ct_pump_efficiency);
    s.number("CT_DRIFT_RATE", plant.ct_drift_rate);
    s.number("COOLING_SIZING_FACTOR", plant.cooling_sizing_factor);
    s.boolean("INCLUDE_PUMP_POWER", plant.include_pump_power);
    s.boolean("INCLUDE_CRAC_FAN_POWER", plant.include_crac_fan_power);
    stash(extras, kHvac, s.leftovers());
  }

  std::vector<ServerPower> servers = kServerPower;
  if (doc.contains(kServers)) {
    SectionReader s(doc.at(kServers), kServers);
    s.pair("CPU_POWER_RATIO_LB", plant.cpu_power_ratio_lb.at_idle, plant.cpu_power_ratio_lb.at_full);
    s.pair("CPU_POWER_RATIO_UB", plant.cpu_power_ratio_ub.at_idle, plant.cpu_power_ratio_ub.at_full);
    s.pair("IT_FAN_AIRFLOW_RATIO_LB", plant.it_fan_airflow_ratio_lb.at_idle,
           plant.it_fan_airflow_ratio_lb.at_full);
    s.pair("IT_FAN_AIRFLOW_RATIO_UB", plant.it_fan_airflow_ratio_ub.at_idle,
           plant.it_fan_airflow_ratio_ub.at_full);
    s.number("IT_FAN_FULL_LOAD_V", plant.it_fan_full_load_v);
    s.number("ITFAN_REF_V_RATIO", plant.itfan_ref_v_ratio);
    s.number("ITFAN_REF_P", plant.itfan_ref_p);
    s.pair("INLET_TEMP_RANGE", plant.inlet_temp_range.min_c, plant.inlet_temp_range.max_c);
    if (s.has("DEFAULT_SERVER_POWER_CHARACTERISTICS")) {
      servers = read_server_list(s, "DEFAULT_SERVER_POWER_CHARACTERISTICS");
    }
    stash(extras, kServers, s.leftovers());
  }
  plant.server_characteristics = expand_servers(std::move(servers), plant.num_racks(),
                                                config.warnings);

  if (doc.contains(kExperiment)) {
    SectionReader s(doc.at(kExperiment), kExperiment);
    std::string path;
    if (s.has("workload_path")) {
      s.string("workload_path", path);
      config.workload_path = resolve(path, base_dir);
    }
    if (s.has("ci_path")) {
      s.string("ci_path", path);
      config.ci_path = resolve(path, base_dir);
    }
    if (s.has("weather_path")) {
      s.string("weather_path", path);
      config.weather_path = resolve(path, base_dir);
    }
    s.integer("steps_per_hour", config.steps_per_hour);
    s.integer("trace_hours", config.trace_hours);
    s.integer("horizon_steps", config.horizon_steps);
    s.integer("start_step", config.start_step);
    s.number("flexible_ratio", config.flexible_ratio);
    s.integer("forecast_len", config.forecast_len);
    s.number("queue_max", config.queue_max);
    s.number("initial_setpoint", config.initial_setpoint_c);
    s.pair("setpoint_bounds", config.setpoint.lower_c, config.setpoint.upper_c);
    s.number("setpoint_increment", config.setpoint.increment_c);
    s.number("reward_alpha", config.reward_alpha);
    s.string("ls_reward", config.ls_reward);
    s.string("dc_reward", config.dc_reward);
    s.string("bat_reward", config.bat_reward);
    s.uint64("seed", config.seed);
    if (s.has(kBattery)) {
      SectionReader b(s.raw(kBattery), join_key(kExperiment, kBattery));
      b.number("capacity_kwh", config.battery.capacity_kwh);
      b.number("eta_charge", config.battery.eta_charge);
      b.number("eta_discharge", config.battery.eta_discharge);
      b.number("p_charge_max_kw", config.battery.p_charge_max_kw);
      b.number("p_discharge_max_kw", config.battery.p_discharge_max_kw);
      b.number("u", config.battery.u);
      b.number("v", config.battery.v);
      b.number("initial_soc", config.battery_initial_soc);
      json left = b.leftovers();
      if (!left.empty()) extras[kExperiment][kBattery] = std::move(left);
    }
    json left = s.leftovers();
    for (auto& [key, value] : left.items()) extras[kExperiment][key] = value;
  }

  config.extras = std::move(extras);
  validate(config);
  return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file '" + path.string() + "'", 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(path.string() + ":" + std::to_string(line) + ": " + e.what(), line);
  }
  return scenario_from_json(doc, path.parent_path());
}

json to_json(const ScenarioConfig& c) {
  const DCPhysicalConfig& p = c.plant;
  json doc = c.extras;

  json& dc = doc[kDataCenter];
  dc["NUM_ROWS"] = p.num_rows;
  dc["NUM_RACKS_PER_ROW"] = p.num_racks_per_row;
  dc["RACK_SUPPLY_APPROACH_TEMP_LIST"] = p.rack_supply_approach_temp;
  dc["RACK_RETURN_APPROACH_TEMP_LIST"] = p.rack_return_approach_temp;
  dc["CPUS_PER_RACK"] = p.cpus_per_rack;

  json& hvac = doc[kHvac];
  hvac["C_AIR"] = p.c_air;
  hvac["RHO_AIR"] = p.rho_air;
  hvac["CRAC_SUPPLY_AIR_FLOW_RATE_pu"] = p.crac_supply_air_flow_rate_pu;
  hvac["CRAC_REFERENCE_AIR_FLOW_RATE_pu"] = p.crac_reference_air_flow_rate_pu;
  hvac["CRAC_FAN_REF_P"] = p.crac_fan_ref_p;
  hvac["CHILLER_COP_BASE"] = p.chiller_cop_base;
  hvac["CHILLER_COP_K"] = p.chiller_cop_k;
  hvac["CHILLER_COP_T_NOMINAL"] = p.chiller_cop_t_nominal;
  hvac["CT_FAN_REF_P"] = p.ct_fan_ref_p;
  hvac["CT_REFERENCE_AIR_FLOW_RATE"] = p.ct_reference_air_flow_rate;
  hvac["CW_PRESSURE_DROP"] = p.cw_pressure_drop;
  hvac["CW_WATER_FLOW_RATE"] = p.cw_water_flow_rate;
  hvac["CW_PUMP_EFFICIENCY"] = p.cw_pump_efficiency;
  hvac["CT_PRESSURE_DROP"] = p.ct_pressure_drop;
  hvac["CT_WATER_FLOW_RATE"] = p.ct_water_flow_rate;
  hvac["CT_PUMP_EFFICIENCY"] = p.ct_pump_efficiency;
  hvac["CT_DRIFT_RATE"] = p.ct_drift_rate;
  hvac["COOLING_SIZING_FACTOR"] = p.cooling_sizing_factor;
  hvac["INCLUDE_PUMP_POWER"] = p.include_pump_power;
  hvac["INCLUDE_CRAC_FAN_POWER"] = p.include_crac_fan_power;

  auto ratio = [](const LoadRatio& r) { return json::array({r.at_idle, r.at_full}); };
  json& srv = doc[kServers];
  srv["CPU_POWER_RATIO_LB"] = ratio(p.cpu_power_ratio_lb);
  srv["CPU_POWER_RATIO_UB"] = ratio(p.cpu_power_ratio_ub);
  srv["IT_FAN_AIRFLOW_RATIO_LB"] = ratio(p.it_fan_airflow_ratio_lb);
  srv["IT_FAN_AIRFLOW_RATIO_UB"] = ratio(p.it_fan_airflow_ratio_ub);
  srv["IT_FAN_FULL_LOAD_V"] = p.it_fan_full_load_v;
  srv["ITFAN_REF_V_RATIO"] = p.itfan_ref_v_ratio;
  srv["ITFAN_REF_P"] = p.itfan_ref_p;
  srv["INLET_TEMP_RANGE"] = json::array({p.inlet_temp_range.min_c, p.inlet_temp_range.max_c});
  json servers = json::array();
  for (const auto& s : p.server_characteristics) servers.push_back({s.full_load_w, s.idle_w});
  srv["DEFAULT_SERVER_POWER_CHARACTERISTICS"] = std::move(servers);

  json& ex = doc[kExperiment];
  ex["workload_path"] = c.workload_path.string();
  ex["ci_path"] = c.ci_path.string();
  ex["weather_path"] = c.weather_path.string();
  ex["steps_per_hour"] = c.steps_per_hour;
  ex["trace_hours"] = c.trace_hours;
  ex["horizon_steps"] = c.horizon_steps;
  ex["start_step"] = c.start_step;
  ex["flexible_ratio"] = c.flexible_ratio;
  ex["forecast_len"] = c.forecast_len;
  ex["queue_max"] = c.queue_max;
  ex["initial_setpoint"] = c.initial_setpoint_c;
  ex["setpoint_bounds"] = json::array({c.setpoint.lower_c, c.setpoint.upper_c});
  ex["setpoint_increment"] = c.setpoint.increment_c;
  ex["reward_alpha"] = c.reward_alpha;
  ex["ls_reward"] = c.ls_reward;
  ex["dc_reward"] = c.dc_reward;
  ex["bat_reward"] = c.bat_reward;
  ex["seed"] = c.seed;
  json& bat = ex[kBattery];
  bat["capacity_kwh"] = c.battery.capacity_kwh;
  bat["eta_charge"] = c.battery.eta_charge;
  bat["eta_discharge"] = c.battery.eta_discharge;
  bat["p_charge_max_kw"] = c.battery.p_charge_max_kw;
  bat["p_discharge_max_kw"] = c.battery.p_discharge_max_kw;
  bat["u"] = c.battery.u;
  bat["v"] = c.battery.v;
  bat["initial_soc"] = c.battery_initial_soc;
  return doc;
}

void validate(const ScenarioConfig& c) {
  const DCPhysicalConfig& p = c.plant;
  const auto dc = [](const char* k) { return join_key(kDataCenter, k); };
  const auto hv = [](const char* k) { return join_key(kHvac, k); };
  const auto sv = [](const char* k) { return join_key(kServers, k); };
  const auto ex = [](const char* k) { return join_key(kExperiment, k); };

  require(p.num_rows >= 1, dc("NUM_ROWS"), "must be >= 1");
  require(p.num_racks_per_row >= 1, dc("NUM_RACKS_PER_ROW"), "must be >= 1");
  require(p.cpus_per_rack >= 1, dc("CPUS_PER_RACK"), "must be >= 1");
  const std::string racks = std::to_string(p.num_racks());
  require(p.rack_supply_approach_temp.size() == p.num_racks(),
          dc("RACK_SUPPLY_APPROACH_TEMP_LIST"),
          "has " + std::to_string(p.rack_supply_approach_temp.size()) +
              " entries, expected NUM_ROWS*NUM_RACKS_PER_ROW = " + racks);
  require(p.rack_return_approach_temp.size() == p.num_racks(),
          dc("RACK_RETURN_APPROACH_TEMP_LIST"),
          "has " + std::to_string(p.rack_return_approach_temp.size()) +
              " entries, expected NUM_ROWS*NUM_RACKS_PER_ROW = " + racks);
  for (double t : p.rack_supply_approach_temp) {
    require(std::isfinite(t), dc("RACK_SUPPLY_APPROACH_TEMP_LIST"), "entries must be finite");
  }
  for (double t : p.rack_return_approach_temp) {
    require(std::isfinite(t), dc("RACK_RETURN_APPROACH_TEMP_LIST"), "entries must be finite");
  }

  require(positive(p.c_air), hv("C_AIR"), "must be > 0");
  require(positive(p.rho_air), hv("RHO_AIR"), "must be > 0");
  require(positive(p.crac_supply_air_flow_rate_pu), hv("CRAC_SUPPLY_AIR_FLOW_RATE_pu"),
          "must be > 0");
  require(positive(p.crac_reference_air_flow_rate_pu), hv("CRAC_REFERENCE_AIR_FLOW_RATE_pu"),
          "must be > 0");
  require(positive(p.crac_fan_ref_p), hv("CRAC_FAN_REF_P"), "must be > 0");
  require(positive(p.chiller_cop_base), hv("CHILLER_COP_BASE"), "must be > 0");
  require(non_negative(p.chiller_cop_k), hv("CHILLER_COP_K"), "must be >= 0");
  require(std::isfinite(p.chiller_cop_t_nominal), hv("CHILLER_COP_T_NOMINAL"), "must be finite");
  require(positive(p.ct_fan_ref_p), hv("CT_FAN_REF_P"), "must be > 0");
  require(positive(p.ct_reference_air_flow_rate), hv("CT_REFERENCE_AIR_FLOW_RATE"),
          "must be > 0");
  require(non_negative(p.cw_pressure_drop), hv("CW_PRESSURE_DROP"), "must be >= 0");
  require(non_negative(p.cw_water_flow_rate), hv("CW_WATER_FLOW_RATE"), "must be >= 0");
  require(fraction(p.cw_pump_efficiency), hv("CW_PUMP_EFFICIENCY"), "must be in (0, 1]");
  require(non_negative(p.ct_pressure_drop), hv("CT_PRESSURE_DROP"), "must be >= 0");
  require(non_negative(p.ct_water_flow_rate), hv("CT_WATER_FLOW_RATE"), "must be >= 0");
  require(fraction(p.ct_pump_efficiency), hv("CT_PUMP_EFFICIENCY"), "must be in (0, 1]");
  require(p.ct_drift_rate >= 0.0 && p.ct_drift_rate <= 1.0, hv("CT_DRIFT_RATE"),
          "must be in [0, 1]");
  require(positive(p.cooling_sizing_factor), hv("COOLING_SIZING_FACTOR"), "must be > 0");

  auto check_ratio = [&](const LoadRatio& r, const char* key) {
    require(non_negative(r.at_idle) && non_negative(r.at_full), sv(key),
            "ratios must be finite and >= 0");
    require(r.at_idle <= r.at_full, sv(key), "ratio at load 0 must not exceed ratio at load 1");
  };
  check_ratio(p.cpu_power_ratio_lb, "CPU_POWER_RATIO_LB");
  check_ratio(p.cpu_power_ratio_ub, "CPU_POWER_RATIO_UB");
  check_ratio(p.it_fan_airflow_ratio_lb, "IT_FAN_AIRFLOW_RATIO_LB");
  check_ratio(p.it_fan_airflow_ratio_ub, "IT_FAN_AIRFLOW_RATIO_UB");
  require(p.cpu_power_ratio_lb.at_idle <= p.cpu_power_ratio_ub.at_idle &&
              p.cpu_power_ratio_lb.at_full <= p.cpu_power_ratio_ub.at_full,
          sv("CPU_POWER_RATIO_UB"), "must be >= CPU_POWER_RATIO_LB elementwise");
  require(p.it_fan_airflow_ratio_lb.at_idle <= p.it_fan_airflow_ratio_ub.at_idle &&
              p.it_fan_airflow_ratio_lb.at_full <= p.it_fan_airflow_ratio_ub.at_full,
          sv("IT_FAN_AIRFLOW_RATIO_UB"), "must be >= IT_FAN_AIRFLOW_RATIO_LB elementwise");
  require(p.it_fan_airflow_ratio_lb.at_idle > 0.0, sv("IT_FAN_AIRFLOW_RATIO_LB"),
          "ratio at load 0 must be > 0 (zero airflow makes outlet temperature singular)");
  require(positive(p.it_fan_full_load_v), sv("IT_FAN_FULL_LOAD_V"), "must be > 0");
  require(positive(p.itfan_ref_v_ratio), sv("ITFAN_REF_V_RATIO"), "must be > 0");
  require(positive(p.itfan_ref_p), sv("ITFAN_REF_P"), "must be > 0");
  require(std::isfinite(p.inlet_temp_range.min_c) && std::isfinite(p.inlet_temp_range.max_c) &&
              p.inlet_temp_range.min_c < p.inlet_temp_range.max_c,
          sv("INLET_TEMP_RANGE"), "min must be < max");
  require(p.server_characteristics.size() == p.num_racks(),
          sv("DEFAULT_SERVER_POWER_CHARACTERISTICS"), "must have one entry per rack");
  for (const auto& s : p.server_characteristics) {
    require(positive(s.full_load_w), sv("DEFAULT_SERVER_POWER_CHARACTERISTICS"),
            "full-load power must be > 0");
    require(non_negative(s.idle_w) && s.idle_w <= s.full_load_w,
            sv("DEFAULT_SERVER_POWER_CHARACTERISTICS"),
            "idle power must be in [0, full-load power]");
  }

  require(c.steps_per_hour >= 1, ex("steps_per_hour"), "must be >= 1");
  require(c.trace_hours >= 1, ex("trace_hours"), "must be >= 1");
  require(c.horizon_steps > 0, ex("horizon_steps"), "must be > 0");
  require(c.start_step >= 0, ex("start_step"), "must be >= 0");
  require(c.flexible_ratio > 0.0 && c.flexible_ratio < 1.0, ex("flexible_ratio"),
          "must be in (0, 1)");
  require(c.forecast_len >= 1, ex("forecast_len"), "must be >= 1");
  require(positive(c.queue_max), ex("queue_max"), "must be > 0");
  require(std::isfinite(c.setpoint.lower_c) && std::isfinite(c.setpoint.upper_c) &&
              c.setpoint.lower_c < c.setpoint.upper_c,
          ex("setpoint_bounds"), "lower bound must be < upper bound");
  require(c.setpoint.lower_c >= p.inlet_temp_range.min_c &&
              c.setpoint.upper_c <= p.inlet_temp_range.max_c,
          ex("setpoint_bounds"), "must lie within server_characteristics.INLET_TEMP_RANGE");
  require(positive(c.setpoint.increment_c), ex("setpoint_increment"), "must be > 0");
  require(c.initial_setpoint_c >= c.setpoint.lower_c && c.initial_setpoint_c <= c.setpoint.upper_c,
          ex("initial_setpoint"), "must lie within setpoint_bounds");
  require(c.reward_alpha >= 0.0 && c.reward_alpha <= 1.0, ex("reward_alpha"), "must be in [0, 1]");
  validate(c.battery);
  require(c.battery_initial_soc >= 0.0 && c.battery_initial_soc <= 1.0,
          join_key(kExperiment, "battery.initial_soc"), "must be in [0, 1]");
}

}  // namespace dcsim

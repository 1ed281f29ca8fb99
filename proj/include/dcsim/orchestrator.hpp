#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcsim/battery_env.hpp"
#include "dcsim/config.hpp"
#include "dcsim/controllers.hpp"
#include "dcsim/data_ingest.hpp"
#include "dcsim/dc_env.hpp"
#include "dcsim/metrics.hpp"
#include "dcsim/records.hpp"
#include "dcsim/reward_registry.hpp"
#include "dcsim/workload_env.hpp"

namespace dcsim {

struct JointAction {
  LSAction ls = LSAction::DoNothing;
  DCAction dc = DCAction::Maintain;
  BatAction bat = BatAction::Idle;
};

/// Checks each index is in {0, 1, 2}. Throws ContractError naming the
/// offending agent and step.
JointAction joint_action_from_indices(int ls, int dc, int bat, std::size_t t);

/// Energy range used to normalise the DC load in the load-shifting reward
/// and the battery observation.
struct NormalizationBounds {
  double dcload_min_kwh = 0.0;  // idle IT + CRAC fan + pumps at the lowest setpoint
  double dcload_max_kwh = 1.0;  // sized cooling capacity over one step
  double ci_max = 1.0;          // largest CI in the trace
};

NormalizationBounds normalization_bounds(const ScenarioConfig& config, double max_cooling_w,
                                         double ci_max);

/// Default reward triple computed straight from record fields. Throws
/// DomainError when dcload_min >= dcload_max or ci_max <= 0.
RewardTriple default_rewards(const StepRecord& record, const NormalizationBounds& bounds);

/// R_i = alpha * r_i + (1 - alpha) / 2 * (sum of the other two).
RewardTriple mix_rewards(const RewardTriple& r, double alpha);

struct WorldState {
  WorkloadState workload;
  PlantState plant;
  BatteryState battery;
  std::size_t t = 0;  // absolute step; data index wraps

  bool operator==(const WorldState&) const = default;
};

struct Observations {
  std::vector<double> ls;
  std::vector<double> dc;
  std::vector<double> bat;
};

struct StepOutcome {
  StepRecord record;
  WorldState next;
};

/// Immutable scenario plus data. Safe to share between threads; every
/// method is const and state lives in WorldState.
class Environment {
 public:
  /// Validates the config. A null registry means RewardRegistry::with_defaults().
  Environment(ScenarioConfig config, std::shared_ptr<const SeriesBundle> bundle,
              std::shared_ptr<const RewardRegistry> registry = nullptr);

  /// Loads the scenario's data files.
  static Environment from_config(const ScenarioConfig& config,
                                 std::shared_ptr<const RewardRegistry> registry = nullptr);

  const ScenarioConfig& config() const { return config_; }
  const SeriesBundle& bundle() const { return *bundle_; }
  double max_cooling_w() const { return max_cooling_w_; }
  const NormalizationBounds& bounds() const { return bounds_; }

  /// Empty queue, initial setpoint, initial SoC. The plant's "previous step"
  /// fields hold a steady-state evaluation at the start step's conditions.
  WorldState initial_state(std::size_t start_step) const;

  Observations observe(const WorldState& state) const;

  /// Load shifting, then cooling on the shifted load, then the battery, then
  /// CFP and rewards.
  StepOutcome step_joint(const WorldState& state, const JointAction& action) const;

  /// Parameter map handed to the configured reward functions.
  RewardParams reward_params(const StepRecord& record) const;

 private:
  ScenarioConfig config_;
  std::shared_ptr<const SeriesBundle> bundle_;
  std::shared_ptr<const RewardRegistry> registry_;
  const RewardSpec* ls_reward_ = nullptr;
  const RewardSpec* dc_reward_ = nullptr;
  const RewardSpec* bat_reward_ = nullptr;
  double max_cooling_w_ = 0.0;
  NormalizationBounds bounds_;
  WorkloadParams workload_params_;
};

struct ControllerSet {
  std::unique_ptr<Policy> ls;
  std::unique_ptr<Policy> dc;
  std::unique_ptr<Policy> bat;
};

ControllerSet make_controllers(const ControllerSelection& selection,
                               const ScenarioConfig& config, std::uint64_t seed);

struct EpisodeResult {
  EpisodeMetrics metrics;
  std::vector<StepRecord> records;  // empty unless the trace was kept
};

/// Resets the controllers, then runs `horizon` observe → act → step_joint
/// iterations from `start_step`. Throws ValidationError for horizon 0.
EpisodeResult run_episode(const Environment& env, ControllerSet& controllers,
                          std::size_t start_step, std::size_t horizon, bool keep_trace = true);

/// Trace CSV column names, in output order.
const std::vector<std::string>& trace_columns();
void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, const StepRecord& record);
void write_trace_csv(std::ostream& out, const std::vector<StepRecord>& records);

/// Same fields and names as the trace CSV.
nlohmann::json to_json(const StepRecord& record);

}  // namespace dcsim

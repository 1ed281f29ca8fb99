#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "dcsim/observation.hpp"

namespace dcsim {

/// Maps one agent's observation vector to an action index in {0, 1, 2}.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual int act(std::span<const double> observation) = 0;
  /// Restores the state the policy had right after construction.
  virtual void reset() {}
  virtual std::string name() const = 0;
};

/// Always DoNothing.
std::unique_ptr<Policy> baseline_ls();

/// Dead-band rule on the observed room temperature: above `upper_c`
/// decrease the setpoint, below `lower_c` increase it, otherwise hold.
std::unique_ptr<Policy> baseline_dc(obs::DcLayout layout, double lower_c = 25.0,
                                    double upper_c = 27.0);

/// Compares the current CI with the mean of the next `lookahead_steps`
/// forecast values (capped at the window length). Charges when CI is more
/// than `margin` (fraction of that mean) below it, discharges when above.
std::unique_ptr<Policy> baseline_bat(obs::BatLayout layout, std::size_t lookahead_steps,
                                     double margin = 0.05);

/// Defers when the current CI is above the p-th percentile of the forecast
/// window and works the queue off when below the (100-p)-th. Throws
/// ValidationError unless 50 < p < 100.
std::unique_ptr<Policy> greedy_ls(obs::LsLayout layout, double percentile = 75.0);

std::unique_ptr<Policy> constant_policy(int action, std::string label);

/// Uniform over {0, 1, 2}; reset() reseeds.
std::unique_ptr<Policy> random_policy(std::uint64_t seed);

/// Percentile with linear interpolation between closest ranks.
double percentile(std::span<const double> values, double p);

/// Per-agent policy names, e.g. from "ls=greedy:80,dc=g36,bat=ci3h".
struct ControllerSelection {
  std::string ls = "baseline";
  std::string dc = "g36";
  std::string bat = "ci3h";

  /// Canonical "ls=...,dc=...,bat=..." form.
  std::string label() const;
  bool operator==(const ControllerSelection&) const = default;
};

/// Agents not named keep their baseline. Throws ValidationError for an
/// unknown agent key or a malformed entry.
ControllerSelection parse_controllers(std::string_view text);

struct PolicyContext {
  std::size_t forecast_len = 12;
  int steps_per_hour = 4;
  std::uint64_t seed = 0;
};

/// ls: baseline | greedy[:p] | defer | process | random
/// dc: g36[:lower:upper] | maintain | random
/// bat: ci3h[:margin] | idle | charge | discharge | random
/// Throws ValidationError for unknown names or bad parameters.
std::unique_ptr<Policy> make_ls_policy(std::string_view spec, const PolicyContext& ctx);
std::unique_ptr<Policy> make_dc_policy(std::string_view spec, const PolicyContext& ctx);
std::unique_ptr<Policy> make_bat_policy(std::string_view spec, const PolicyContext& ctx);

}  // namespace dcsim

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>

#include <json.hpp>

#include "dcsim/orchestrator.hpp"

namespace dcsim {

struct SessionStep {
  Observations observations;
  RewardTriple rewards;  // mixed
  bool done = false;
  StepRecord record;
};

/// Externally driven episode: the caller supplies actions one step at a
/// time. Used by the line protocol behind `dcsim serve`.
class Session {
 public:
  explicit Session(std::shared_ptr<const Environment> env);

  /// Starts an episode. Defaults come from the scenario config.
  Observations reset(std::optional<std::size_t> start_step = std::nullopt,
                     std::optional<std::size_t> horizon = std::nullopt);

  /// Throws ContractError before reset(), after done, or for an action index
  /// outside {0, 1, 2}.
  SessionStep step(int ls, int dc, int bat);

  bool active() const { return active_; }
  std::size_t steps_taken() const { return taken_; }
  std::size_t horizon() const { return horizon_; }

 private:
  std::shared_ptr<const Environment> env_;
  WorldState state_;
  std::size_t horizon_ = 0;
  std::size_t taken_ = 0;
  bool active_ = false;
};

nlohmann::json observations_json(const Observations& o);

/// One request per input line, one JSON response per output line:
///   {"cmd":"reset","config":PATH[,"start_step":N][,"horizon":N]}
///   {"cmd":"step","actions":{"agent_ls":i,"agent_dc":i,"agent_bat":i}}
///   {"cmd":"close"}
/// Errors are answered with {"ok":false,"error":{"kind":...,"message":...}}
/// and leave the session as it was. Returns when input ends or on close.
void serve(std::istream& in, std::ostream& out);

}  // namespace dcsim

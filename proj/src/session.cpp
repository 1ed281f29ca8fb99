#include "dcsim/session.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "dcsim/errors.hpp"
#include "dcsim/observation.hpp"

namespace dcsim {

Session::Session(std::shared_ptr<const Environment> env) : env_(std::move(env)) {
  if (!env_) throw ContractError("Session: null environment");
}

Observations Session::reset(std::optional<std::size_t> start_step,
                            std::optional<std::size_t> horizon) {
  const ScenarioConfig& c = env_->config();
  const std::size_t h = horizon.value_or(static_cast<std::size_t>(c.horizon_steps));
  if (h == 0) throw ValidationError("horizon", "must be >= 1");
  state_ = env_->initial_state(start_step.value_or(static_cast<std::size_t>(c.start_step)));
  horizon_ = h;
  taken_ = 0;
  active_ = true;
  return env_->observe(state_);
}

SessionStep Session::step(int ls, int dc, int bat) {
  if (!active_) {
    throw ContractError(taken_ == horizon_ && horizon_ > 0
                            ? "step after the episode finished; call reset"
                            : "step before reset");
  }
  const JointAction a = joint_action_from_indices(ls, dc, bat, state_.t);
  StepOutcome out = env_->step_joint(state_, a);
  state_ = out.next;
  ++taken_;
  SessionStep s;
  s.record = out.record;
  s.rewards = out.record.mixed;
  s.done = taken_ >= horizon_;
  s.observations = env_->observe(state_);
  if (s.done) active_ = false;
  return s;
}

nlohmann::json observations_json(const Observations& o) {
  return {{"agent_ls", o.ls}, {"agent_dc", o.dc}, {"agent_bat", o.bat}};
}

namespace {

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const FormatError*>(&e)) return "FormatError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const ContractError*>(&e)) return "ContractError";
  return "Error";
}

int action_of(const nlohmann::json& actions, const char* key) {
  if (!actions.contains(key)) throw ContractError(std::string("missing action for ") + key);
  const auto& v = actions.at(key);
  if (!v.is_number_integer()) throw ContractError(std::string(key) + " action must be an integer");
  const auto i = v.get<long long>();
  if (i < 0 || i > 2) {
    throw ContractError(std::string(key) + " emitted action " + std::to_string(i) +
                        "; expected 0, 1 or 2");
  }
  return static_cast<int>(i);
}

}  // namespace

void serve(std::istream& in, std::ostream& out) {
  std::unique_ptr<Session> session;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json reply;
    try {
      const nlohmann::json req = nlohmann::json::parse(line);
      const std::string cmd = req.value("cmd", "");
      if (cmd == "reset") {
        const ScenarioConfig config = load_scenario(req.at("config").get<std::string>());
        auto env = std::make_shared<const Environment>(Environment::from_config(config));
        auto next = std::make_unique<Session>(env);
        std::optional<std::size_t> start, horizon;
        if (req.contains("start_step")) start = req.at("start_step").get<std::size_t>();
        if (req.contains("horizon")) horizon = req.at("horizon").get<std::size_t>();
        const Observations o = next->reset(start, horizon);
        session = std::move(next);
        reply = {{"ok", true},
                 {"layout_version", obs::kLayoutVersion},
                 {"horizon", session->horizon()},
                 {"observations", observations_json(o)}};
      } else if (cmd == "step") {
        if (!session) throw ContractError("step before reset");
        const auto& actions = req.at("actions");
        const SessionStep s =
            session->step(action_of(actions, "agent_ls"), action_of(actions, "agent_dc"),
                          action_of(actions, "agent_bat"));
        reply = {{"ok", true},
                 {"observations", observations_json(s.observations)},
                 {"rewards",
                  {{"agent_ls", s.rewards.ls}, {"agent_dc", s.rewards.dc},
                   {"agent_bat", s.rewards.bat}}},
                 {"done", s.done},
                 {"info", to_json(s.record)}};
      } else if (cmd == "close") {
        out << nlohmann::json{{"ok", true}}.dump() << '\n' << std::flush;
        return;
      } else {
        throw ContractError("unknown cmd '" + cmd + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      reply = {{"ok", false}, {"error", {{"kind", "ProtocolError"}, {"message", e.what()}}}};
    } catch (const std::exception& e) {
      reply = {{"ok", false}, {"error", {{"kind", error_kind(e)}, {"message", e.what()}}}};
    }
    out << reply.dump() << '\n' << std::flush;
  }
}

}  // namespace dcsim

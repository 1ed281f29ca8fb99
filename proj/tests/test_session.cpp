#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dcsim/errors.hpp"
#include "dcsim/session.hpp"

using namespace dcsim;
using nlohmann::json;

namespace {

const std::string kFixtures = DCSIM_FIXTURES;

std::shared_ptr<const Environment> env() {
  static const auto e = std::make_shared<const Environment>(
      Environment::from_config(load_scenario(kFixtures + "/ny_7day.json")));
  return e;
}

std::vector<json> converse(const std::vector<json>& requests) {
  std::ostringstream in_text;
  for (const json& r : requests) in_text << r.dump() << '\n';
  std::istringstream in(in_text.str());
  std::ostringstream out;
  serve(in, out);
  std::vector<json> replies;
  std::istringstream lines(out.str());
  std::string line;
  while (std::getline(lines, line)) replies.push_back(json::parse(line));
  return replies;
}

}  // namespace

TEST_CASE("session matches the episode runner") {
  Session s(env());
  const Observations first = s.reset(0, 5);
  CHECK(first.ls == env()->observe(env()->initial_state(0)).ls);

  ControllerSet c = make_controllers({}, env()->config(), 0);
  const EpisodeResult golden = run_episode(*env(), c, 0, 5);
  for (std::size_t k = 0; k < 5; ++k) {
    const StepRecord& g = golden.records[k];
    const SessionStep step = s.step(g.action_ls, g.action_dc, g.action_bat);
    CHECK(step.record == g);
    CHECK(step.rewards == g.mixed);
    CHECK(step.done == (k == 4));
  }
  CHECK_THROWS_AS(s.step(1, 1, 1), ContractError);
}

TEST_CASE("session guards") {
  Session s(env());
  CHECK_THROWS_AS(s.step(1, 1, 1), ContractError);
  s.reset(0, 3);
  try {
    s.step(1, 1, 5);
    FAIL("expected ContractError");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("agent_bat") != std::string::npos);
  }
  CHECK(s.steps_taken() == 0);
  CHECK(s.reset(0, 3).bat == s.reset(0, 3).bat);
}

TEST_CASE("line protocol") {
  const std::string cfg = kFixtures + "/ny_7day.json";
  const auto replies = converse({
      {{"cmd", "step"}, {"actions", {{"agent_ls", 1}, {"agent_dc", 1}, {"agent_bat", 1}}}},
      {{"cmd", "reset"}, {"config", cfg}, {"horizon", 2}},
      {{"cmd", "step"}, {"actions", {{"agent_ls", 1}, {"agent_dc", 1}, {"agent_bat", 7}}}},
      {{"cmd", "step"}, {"actions", {{"agent_ls", 1}, {"agent_dc", 1}, {"agent_bat", 1}}}},
      {{"cmd", "step"}, {"actions", {{"agent_ls", 0}, {"agent_dc", 2}, {"agent_bat", 0}}}},
      {{"cmd", "step"}, {"actions", {{"agent_ls", 1}, {"agent_dc", 1}, {"agent_bat", 1}}}},
      {{"cmd", "reset"}, {"config", "/missing.json"}},
      {{"cmd", "close"}},
  });
  REQUIRE(replies.size() == 8);
  CHECK(replies[0]["ok"] == false);
  CHECK(replies[1]["ok"] == true);
  CHECK(replies[1]["layout_version"] == obs::kLayoutVersion);
  CHECK(replies[1]["observations"]["agent_ls"].size() == 20);
  CHECK(replies[2]["error"]["kind"] == "ContractError");
  CHECK(replies[3]["done"] == false);
  CHECK(replies[4]["done"] == true);
  CHECK(replies[5]["ok"] == false);
  CHECK(replies[6]["error"]["kind"] == "ParseError");

  Session s(env());
  s.reset(0, 2);
  s.step(1, 1, 1);
  const SessionStep direct = s.step(0, 2, 0);
  CHECK(replies[4]["rewards"]["agent_ls"].get<double>() == direct.rewards.ls);
  CHECK(replies[4]["info"]["cfp_kg"].get<double>() == direct.record.cfp_kg);
  CHECK(replies[4]["observations"]["agent_dc"].get<std::vector<double>>() ==
        direct.observations.dc);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dcsim/errors.hpp"
#include "dcsim/reward_registry.hpp"

using namespace dcsim;
namespace k = dcsim::reward_keys;

namespace {

RewardParams sample() {
  return {{k::kTotalEnergyWithBattery, 140.0}, {k::kNormCi, 0.5},      {k::kDcLoadMin, 40.0},
          {k::kDcLoadMax, 240.0},              {k::kTasksDropped, 0.0}, {k::kTasksInQueue, 10.0},
          {k::kCurrentHour, 40.0},             {k::kStepsPerHour, 4.0}, {k::kHvacEnergy, 50.0},
          {k::kItEnergy, 100.0},               {k::kFootprint, 49.0}};
}

}  // namespace

TEST_CASE("defaults are registered") {
  const RewardRegistry r = RewardRegistry::with_defaults();
  CHECK(r.names() ==
        std::vector<std::string>{"default_bat_reward", "default_dc_reward", "default_ls_reward"});
  CHECK(r.resolve("default_bat_reward").fn(sample()) == -49.0);
  CHECK(r.resolve("default_dc_reward").fn(sample()) == -150.0);
  // -(0.5 * (140 - 40) / 200)
  CHECK(r.resolve("default_ls_reward").fn(sample()) == -0.25);
}

TEST_CASE("ls reward penalties") {
  RewardParams p = sample();
  p[k::kTotalEnergyWithBattery] = 40.0;
  CHECK(default_ls_reward(p) == 0.0);
  p[k::kTasksDropped] = 3.0;
  CHECK(default_ls_reward(p) == -30.0);
  p[k::kTasksDropped] = 0.0;
  p[k::kCurrentHour] = 91;
  CHECK(default_ls_reward(p) == 0.0);
  p[k::kCurrentHour] = 95 + 96 * 3;  // counter taken modulo the day
  CHECK(std::abs(default_ls_reward(p) + 1.0075) < 1e-3);
}

TEST_CASE("unknown names list what is registered") {
  const RewardRegistry r = RewardRegistry::with_defaults();
  try {
    r.resolve("foo");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("foo") != std::string::npos);
    CHECK(msg.find("default_ls_reward") != std::string::npos);
    CHECK(msg.find("default_bat_reward") != std::string::npos);
  }
}

TEST_CASE("custom rewards round trip") {
  RewardRegistry r = RewardRegistry::with_defaults();
  r.add({"water_aware", {k::kWater}, [](const RewardParams& p) { return -param(p, k::kWater); }});
  CHECK(r.contains("water_aware"));
  CHECK(r.resolve("water_aware").fn({{k::kWater, 12.5}}) == -12.5);
  CHECK(r.resolve("water_aware").keys == std::vector<std::string>{k::kWater});
  CHECK_THROWS_AS(r.add({"water_aware", {}, [](const RewardParams&) { return 0.0; }}),
                  ValidationError);
  CHECK_THROWS_AS(r.add({"empty", {}, {}}), ValidationError);
}

TEST_CASE("missing parameter is a contract error") {
  CHECK_THROWS_AS(default_dc_reward({}), ContractError);
}

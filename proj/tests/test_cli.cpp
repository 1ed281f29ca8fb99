#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcsim/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kFixtures = DCSIM_FIXTURES;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "dcsim");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = dcsim::run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dcsim_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

const std::string kNy = kFixtures + "/ny_7day.json";

}  // namespace

TEST_CASE("run writes metrics and trace") {
  const fs::path out = scratch("run");
  const Result r = cli({"run", "--config", kNy, "--horizon", "96", "--out", out.string(),
                        "--trace", "--controllers", "ls=baseline,dc=g36,bat=ci3h",
                        "--controllers", "ls=greedy,dc=g36,bat=ci3h"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const json doc = json::parse(slurp(out / "metrics.json"));
  REQUIRE(doc["rows"].size() == 2);
  for (const auto& row : doc["rows"]) {
    for (const auto& [k, v] : row.items()) {
      if (v.is_number()) CHECK(std::isfinite(v.get<double>()));
    }
  }
  CHECK(doc["horizon_steps"] == 96);
  CHECK(doc.contains("normalized"));
  CHECK(fs::exists(out / "normalized.csv"));
  CHECK(lines(slurp(out / "metrics.csv")) == 3);
  CHECK(slurp(out / "metrics.csv").find("\"ls=baseline,dc=g36,bat=ci3h\"") != std::string::npos);
  CHECK(lines(slurp(out / "trace.csv")) == 97);
}

TEST_CASE("horizon 1") {
  const fs::path out = scratch("h1");
  const Result r = cli({"run", "--config", kNy, "--horizon", "1", "--out", out.string(), "--trace"});
  REQUIRE(r.code == 0);
  CHECK(lines(slurp(out / "trace.csv")) == 2);
  CHECK_FALSE(fs::exists(out / "normalized.csv"));
}

TEST_CASE("errors leave no outputs") {
  const fs::path out = scratch("missing");
  Result r = cli({"run", "--config", "/nonexistent/cfg.json", "--out", out.string()});
  CHECK(r.code == 1);
  CHECK_FALSE(fs::exists(out / "metrics.csv"));
  CHECK(json::parse(r.err)["error"]["kind"] == "ParseError");

  r = cli({"run", "--config", kNy, "--out", out.string(), "--controllers", "ls=nope"});
  CHECK(r.code == 1);
  CHECK_FALSE(fs::exists(out / "metrics.csv"));

  r = cli({"run"});
  CHECK(r.code == 1);
  r = cli({"run", "--config", kNy, "--horizon", "0", "--out", out.string()});
  CHECK(r.code == 1);
}

TEST_CASE("identical runs are byte-identical") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  const std::vector<std::string> common = {"run", "--config", kNy, "--horizon", "200",
                                           "--controllers", "ls=random,dc=random,bat=random",
                                           "--seed", "3", "--trace"};
  auto args_a = common;
  args_a.insert(args_a.end(), {"--out", a.string()});
  auto args_b = common;
  args_b.insert(args_b.end(), {"--out", b.string()});
  REQUIRE(cli(args_a).code == 0);
  REQUIRE(cli(args_b).code == 0);
  CHECK(slurp(a / "metrics.csv") == slurp(b / "metrics.csv"));
  CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
}

TEST_CASE("sweep") {
  const std::string ny = "ny:" + kFixtures + "/ny_ci_7day.csv:" + kFixtures + "/ny_7day.epw";
  const std::string az = "az:" + kFixtures + "/az_ci_7day.csv:" + kFixtures + "/az_7day.epw";
  const std::string base = "ls=baseline,dc=g36,bat=ci3h";

  SUBCASE("two locations, two controller sets") {
    const fs::path out = scratch("sweep");
    const Result r = cli({"sweep", "--config", kNy, "--horizon", "96", "--out", out.string(),
                          "--locations", ny, "--locations", az, "--controllers", base,
                          "--controllers", "ls=greedy,dc=g36,bat=idle", "--jobs", "3"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const json doc = json::parse(slurp(out / "metrics.json"));
    CHECK(doc["rows"].size() == 4);
    CHECK(doc["failures"].empty());
    CHECK(doc["normalized"].size() == 2);
    CHECK(lines(slurp(out / "metrics.csv")) == 5);
  }

  SUBCASE("same controller twice gives identical rows") {
    const fs::path out = scratch("sweep_same");
    const Result r = cli({"sweep", "--config", kNy, "--horizon", "48", "--out", out.string(),
                          "--locations", ny, "--controllers", base, "--controllers", base});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const json rows = json::parse(slurp(out / "metrics.json"))["rows"];
    REQUIRE(rows.size() == 2);
    for (const auto& [k, v] : rows[0].items()) {
      if (v.is_number()) CHECK(v == rows[1][k]);
    }
  }

  SUBCASE("an unreadable weather file fails only its cells") {
    const fs::path out = scratch("sweep_bad");
    const std::string bad = "bad:" + kFixtures + "/ny_ci_7day.csv:/nonexistent.epw";
    const Result r = cli({"sweep", "--config", kNy, "--horizon", "48", "--out", out.string(),
                          "--locations", ny, "--locations", bad, "--controllers", base,
                          "--controllers", "ls=defer"});
    CHECK(r.code == 3);
    const json doc = json::parse(slurp(out / "metrics.json"));
    CHECK(doc["rows"].size() == 2);
    CHECK(doc["failures"].size() == 2);
    CHECK(r.err.find("nonexistent.epw") != std::string::npos);
  }
}

TEST_CASE("serve over stdin") {
  const std::string input = json{{"cmd", "reset"}, {"config", kNy}, {"horizon", 1}}.dump() + "\n" +
                            R"({"cmd":"step","actions":{"agent_ls":1,"agent_dc":1,"agent_bat":1}})" +
                            "\n" + R"({"cmd":"close"})" + "\n";
  const Result r = cli({"serve"}, input);
  CHECK(r.code == 0);
  std::istringstream s(r.out);
  std::string line;
  std::vector<json> replies;
  while (std::getline(s, line)) replies.push_back(json::parse(line));
  REQUIRE(replies.size() == 3);
  CHECK(replies[1]["done"] == true);
}

TEST_CASE("installed binary") {
  const char* bin = std::getenv("DCSIM_BIN");
  if (bin == nullptr) return;
  const fs::path out = scratch("bin");
  const std::string ok = std::string(bin) + " run --config " + kNy + " --horizon 4 --out " +
                         out.string() + " > /dev/null";
  CHECK(std::system(ok.c_str()) == 0);
  CHECK(fs::exists(out / "metrics.csv"));
  const std::string bad = std::string(bin) + " run --config /nonexistent.json --out " +
                          out.string() + "/x 2> /dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 1);
}

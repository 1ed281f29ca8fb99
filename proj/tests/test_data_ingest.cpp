#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dcsim/config.hpp"
#include "dcsim/data_ingest.hpp"
#include "dcsim/errors.hpp"

using namespace dcsim;

namespace {

const std::string kFixtures = DCSIM_FIXTURES;

// Stull (2011) empirical fit; used only as an independent cross-check.
double stull_wet_bulb(double t, double rh) {
  return t * std::atan(0.151977 * std::sqrt(rh + 8.313659)) + std::atan(t + rh) -
         std::atan(rh - 1.676331) + 0.00391838 * std::pow(rh, 1.5) * std::atan(0.023101 * rh) -
         4.686035;
}

std::string epw(std::size_t records, double t_db, double rh) {
  std::ostringstream s;
  for (int i = 0; i < 8; ++i) s << "HEADER " << i << "\n";
  for (std::size_t r = 0; r < records; ++r) {
    s << "2021,1,1," << r % 24 + 1 << ",0,src," << t_db << ",5.0," << rh << ",101325\n";
  }
  return s.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("workload excerpt parses exactly") {
  std::istringstream in(",cpu_load\n1,0.380\n2,0.434\n3,0.402\n4,0.485\n");
  const HourlySeries s = parse_workload(in, "excerpt", std::nullopt);
  REQUIRE(s.values.size() == 4);
  CHECK(s.values[0] == 0.380);
  CHECK(s.values[1] == 0.434);
  CHECK(s.values[2] == 0.402);
  CHECK(s.values[3] == 0.485);
}

TEST_CASE("zero workload year") {
  std::ostringstream s;
  s << ",cpu_load\n";
  for (int i = 1; i <= 8760; ++i) s << i << ",0\n";
  std::istringstream in(s.str());
  const HourlySeries series = parse_workload(in, "zeros");
  CHECK(series.values.size() == 8760);
  CHECK(std::all_of(series.values.begin(), series.values.end(), [](double v) { return v == 0; }));
}

TEST_CASE("workload errors") {
  std::istringstream bad_value(",cpu_load\n1,0.1\n2,0.2\n3,0.3\n4,0.4\n5,1.2\n");
  try {
    parse_workload(bad_value, "w", std::nullopt);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("row 5") != std::string::npos);
  }
  std::istringstream bad_header(",load\n1,0.1\n");
  CHECK_THROWS_AS(parse_workload(bad_header, "w", std::nullopt), FormatError);
  std::istringstream short_file(",cpu_load\n1,0.1\n");
  CHECK_THROWS_AS(parse_workload(short_file, "w"), FormatError);
}

TEST_CASE("CI excerpt parses exactly") {
  std::istringstream in(
      "timestamp,WND,SUN,WAT,OIL,NG,COL,NUC,OTH,avg_CI\n"
      "2022-01-01 00:00:00+00:00,0.1,0.0,0.05,0.01,0.4,0.2,0.2,0.04,367.450\n"
      "2022-01-01 01:00:00+00:00,0.1,0.0,0.05,0.01,0.4,0.2,0.2,0.04,363.434\n");
  const HourlySeries s = parse_ci(in, "excerpt", std::nullopt);
  REQUIRE(s.values.size() == 2);
  CHECK(s.values[0] == 367.450);
  CHECK(s.values[1] == 363.434);
  CHECK(s.labels[0] == "2022-01-01 00:00:00+00:00");
  CHECK(s.aux.at("NG")[0] == 0.4);
}

TEST_CASE("CI header must match exactly") {
  std::istringstream in("timestamp,WND,SUN,WAT,OIL,NG,COL,NUC,OTH,avgCI\nx,0,0,0,0,0,0,0,0,1\n");
  CHECK_THROWS_AS(parse_ci(in, "ci", std::nullopt), FormatError);
  std::istringstream neg("timestamp,WND,SUN,WAT,OIL,NG,COL,NUC,OTH,avg_CI\nx,0,0,0,0,0,0,0,0,-1\n");
  CHECK_THROWS_AS(parse_ci(neg, "ci", std::nullopt), ValidationError);
}

TEST_CASE("EPW constant fixture and record count") {
  std::istringstream in(epw(8760, 20.0, 50));
  const WeatherSeries w = parse_weather(in, "const");
  CHECK(w.dry_bulb.values.size() == 8760);
  CHECK(std::all_of(w.dry_bulb.values.begin(), w.dry_bulb.values.end(),
                    [](double v) { return v == 20.0; }));
  CHECK(std::all_of(w.rel_humidity.values.begin(), w.rel_humidity.values.end(),
                    [](double v) { return v == 50.0; }));
  CHECK(w.dry_bulb.warnings.empty());

  std::istringstream short_in(epw(8759, 20.0, 50));
  try {
    parse_weather(short_in, "short");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("8759") != std::string::npos);
  }
}

TEST_CASE("EPW missing-value sentinel is carried and flagged") {
  std::istringstream in(epw(3, 99.9, 50));
  const WeatherSeries w = parse_weather(in, "sentinel", std::nullopt);
  CHECK(w.dry_bulb.values[0] == 99.9);
  CHECK(w.dry_bulb.warnings.size() == 3);
}

TEST_CASE("wet-bulb against saturation identity and Stull") {
  CHECK(std::abs(wet_bulb_temp(20.0, 100) - 20.0) <= 0.2);
  // Stull's fit gives 13.70 and 19.30 here; both within the stated band.
  CHECK(std::abs(stull_wet_bulb(20.0, 50) - 13.7) < 0.05);
  CHECK(std::abs(wet_bulb_temp(20.0, 50) - 13.7) <= 0.5);
  CHECK(std::abs(wet_bulb_temp(20.0, 50) - stull_wet_bulb(20.0, 50)) <= 0.5);
  CHECK(std::abs(wet_bulb_temp(35.0, 20) - 19.0) <= 1.0);
  CHECK(std::abs(wet_bulb_temp(35.0, 20) - stull_wet_bulb(35.0, 20)) <= 1.0);
  CHECK_THROWS_AS(wet_bulb_temp(20.0, -1), DomainError);
  CHECK_THROWS_AS(wet_bulb_temp(20.0, 100.5), DomainError);
}

TEST_CASE("wet-bulb is bounded by dry-bulb and monotone in RH") {
  for (double t = -10.0; t <= 45.0; t += 5.0) {
    double prev = -1e9;
    for (double rh = 0.0; rh <= 100.0; rh += 2.5) {
      const double wb = wet_bulb_temp(t, rh);
      CAPTURE(t);
      CAPTURE(rh);
      CHECK(wb <= t + 1e-9);
      CHECK(wb >= prev);
      prev = wb;
    }
  }
}

TEST_CASE("resample holds each hour") {
  const std::vector<double> two = {1.5, 2.5};
  CHECK(resample_to_steps(two, 4) == std::vector<double>{1.5, 1.5, 1.5, 1.5, 2.5, 2.5, 2.5, 2.5});
  const std::vector<double> one = {7.0};
  CHECK(resample_to_steps(one, 1) == one);
  const std::vector<double> hourly = {0.25, 0.5, 0.125, 1.0};
  const auto steps = resample_to_steps(hourly, 3);
  CHECK(std::accumulate(steps.begin(), steps.end(), 0.0) ==
        3 * std::accumulate(hourly.begin(), hourly.end(), 0.0));
}

TEST_CASE("forecast windows wrap") {
  const std::vector<double> s = {1, 2, 3, 4, 5};
  CHECK(forecast_window(s, 1, 2) == std::vector<double>{2, 3, 4});
  CHECK(forecast_window(s, 4, 1) == std::vector<double>{5, 1});
  CHECK(forecast_window(s, 3, 0) == std::vector<double>{4});
  for (std::size_t t = 0; t < 12; ++t) CHECK(forecast_window(s, t, 7).size() == 8);
}

TEST_CASE("fixtures re-emit bit-exactly") {
  const HourlySeries w = load_workload(kFixtures + "/workload_7day.csv", 168);
  std::ostringstream wo;
  write_workload_csv(wo, w);
  CHECK(wo.str() == slurp(kFixtures + "/workload_7day.csv"));
  std::istringstream wi(wo.str());
  CHECK(parse_workload(wi, "again", 168).values == w.values);

  const HourlySeries c = load_ci(kFixtures + "/ny_ci_7day.csv", 168);
  std::ostringstream co;
  write_ci_csv(co, c);
  std::istringstream ci(co.str());
  const HourlySeries c2 = parse_ci(ci, "again", 168);
  CHECK(c2.values == c.values);
  CHECK(c2.aux == c.aux);
}

TEST_CASE("bundle alignment") {
  const ScenarioConfig cfg = load_scenario(kFixtures + "/ny_7day.json");
  const SeriesBundle b = load_bundle(cfg);
  CHECK(b.size() == 168 * 4);
  CHECK(b.ci.size() == b.size());
  CHECK(b.wet_bulb.size() == b.size());
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.wet_bulb[i] <= b.dry_bulb[i]);
  CHECK(b.ci_max == *std::max_element(b.ci.begin(), b.ci.end()));
  CHECK(b.index(b.size() + 3) == 3);
}

TEST_CASE("time features") {
  const TimeFeatures midnight = time_features(0, 4);
  CHECK(midnight.sin_hour == 0.0);
  CHECK(midnight.cos_hour == 1.0);
  const TimeFeatures six = time_features(24, 4);
  CHECK(six.sin_hour == doctest::Approx(1.0));
  CHECK(std::abs(six.cos_hour) < 1e-12);
  const TimeFeatures next_day = time_features(96, 4);
  CHECK(next_day.sin_hour == 0.0);
  CHECK(next_day.sin_day == doctest::Approx(std::sin(2 * M_PI / 365)));
}

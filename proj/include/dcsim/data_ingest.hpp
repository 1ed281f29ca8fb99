#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dcsim {

struct ScenarioConfig;

inline constexpr std::size_t kHoursPerYear = 8760;

/// One hourly input column.
struct HourlySeries {
  std::string name;
  std::string units;
  std::vector<double> values;
  /// Row labels as read (index column or timestamp); empty for EPW.
  std::vector<std::string> labels;
  /// Extra numeric columns kept alongside the main one (CI source mix).
  std::map<std::string, std::vector<double>> aux;
  /// Non-fatal findings, e.g. EPW missing-value sentinels.
  std::vector<std::string> warnings;
};

struct WeatherSeries {
  HourlySeries dry_bulb;
  HourlySeries rel_humidity;
};

/// `expected_rows` of nullopt skips the row-count check.
HourlySeries parse_workload(std::istream& in, const std::string& source,
                            std::optional<std::size_t> expected_rows = kHoursPerYear);
HourlySeries load_workload(const std::filesystem::path& path,
                           std::optional<std::size_t> expected_rows = kHoursPerYear);

HourlySeries parse_ci(std::istream& in, const std::string& source,
                      std::optional<std::size_t> expected_rows = kHoursPerYear);
HourlySeries load_ci(const std::filesystem::path& path,
                     std::optional<std::size_t> expected_rows = kHoursPerYear);

WeatherSeries parse_weather(std::istream& in, const std::string& source,
                            std::optional<std::size_t> expected_records = kHoursPerYear);
WeatherSeries load_weather(const std::filesystem::path& path,
                           std::optional<std::size_t> expected_records = kHoursPerYear);

/// Writers emitting the same layouts the loaders accept. Numbers use the
/// shortest representation that parses back to the identical double.
void write_workload_csv(std::ostream& out, const HourlySeries& series);
void write_ci_csv(std::ostream& out, const HourlySeries& series);

/// Psychrometric wet-bulb temperature at sea-level pressure. Throws
/// DomainError for rh outside [0, 100] or a non-finite t_db.
double wet_bulb_temp(double t_db_c, double rh_pct);

/// Piecewise-constant hold: each value repeated `steps_per_hour` times.
std::vector<double> resample_to_steps(std::span<const double> hourly, int steps_per_hour);

/// Values at steps t..t+horizon, wrapping past the end of the series.
std::vector<double> forecast_window(std::span<const double> series, std::size_t t,
                                    std::size_t horizon);

/// Step-aligned inputs for one simulation.
struct SeriesBundle {
  std::vector<double> workload;
  std::vector<double> ci;
  std::vector<double> dry_bulb;
  std::vector<double> rel_humidity;
  std::vector<double> wet_bulb;
  int steps_per_hour = 4;
  double ci_max = 0.0;

  std::size_t size() const { return workload.size(); }
  /// Wraps t into the series.
  std::size_t index(std::size_t t) const { return t % workload.size(); }
};

/// Resamples four equally long hourly series onto the step grid and derives
/// wet-bulb. Throws FormatError on length mismatch.
SeriesBundle make_bundle(const HourlySeries& workload, const HourlySeries& ci,
                         const WeatherSeries& weather, int steps_per_hour);

/// Loads the three files named in the scenario and assembles the bundle.
SeriesBundle load_bundle(const ScenarioConfig& config);

/// sin/cos of hour-of-day and day-of-year for absolute step t.
struct TimeFeatures {
  double sin_hour = 0.0;
  double cos_hour = 1.0;
  double sin_day = 0.0;
  double cos_day = 1.0;
};
TimeFeatures time_features(std::size_t t, int steps_per_hour);

}  // namespace dcsim

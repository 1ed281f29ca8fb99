#include "dcsim/data_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>

#include "dcsim/config.hpp"
#include "dcsim/errors.hpp"
#include "dcsim/text.hpp"

namespace dcsim {

namespace {

const std::vector<std::string> kCiColumns = {"timestamp", "WND", "SUN", "WAT", "OIL",
                                             "NG",        "COL", "NUC", "OTH", "avg_CI"};
constexpr std::size_t kEpwHeaderLines = 8;
constexpr std::size_t kEpwDryBulbField = 6;  // 0-based; field 7 in the EPW layout
constexpr std::size_t kEpwRelHumField = 8;   // field 9
constexpr double kEpwMissingDryBulb = 99.9;
constexpr double kEpwMissingRelHum = 999.0;

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  return in;
}

double number_at(std::string_view field, const std::string& source, std::size_t line,
                 const char* column) {
  const auto v = text::parse_double(field);
  if (!v) {
    throw FormatError(source + ":" + std::to_string(line) + ": column " + column +
                      " is not a number: '" + std::string(text::trim(field)) + "'");
  }
  if (!std::isfinite(*v)) {
    throw ValidationError(source + ":" + std::to_string(line) + ": " + column,
                          "value must be finite");
  }
  return *v;
}

void check_rows(std::size_t got, std::optional<std::size_t> expected, const std::string& source,
                const char* what) {
  if (expected && got != *expected) {
    throw FormatError(source + ": expected " + std::to_string(*expected) + " " + what +
                      ", found " + std::to_string(got));
  }
}

bool blank(std::string_view line) { return text::trim(line).empty(); }

// Saturation vapour pressure over water, Pa (Magnus form, Alduchov & Eskridge).
double saturation_pressure(double t_c) { return 610.94 * std::exp(17.625 * t_c / (t_c + 243.04)); }

}  // namespace

HourlySeries parse_workload(std::istream& in, const std::string& source,
                            std::optional<std::size_t> expected_rows) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(source + ": empty workload file");
  const auto header = text::split(line, ',');
  if (header.size() != 2 || !text::trim(header[0]).empty() ||
      text::trim(header[1]) != "cpu_load") {
    throw FormatError(source + ": workload header must be ',cpu_load', got '" +
                      std::string(text::trim(line)) + "'");
  }

  HourlySeries series;
  series.name = "cpu_load";
  series.units = "fraction";
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto fields = text::split(line, ',');
    if (fields.size() != 2) {
      throw FormatError(source + ":" + std::to_string(line_no) + ": expected 2 columns, found " +
                        std::to_string(fields.size()));
    }
    const double value = number_at(fields[1], source, line_no, "cpu_load");
    const std::size_t row = series.values.size() + 1;
    if (value < 0.0 || value > 1.0) {
      throw ValidationError(source + ": row " + std::to_string(row) + " (line " +
                                std::to_string(line_no) + ") cpu_load",
                            "value " + text::format_double(value) + " outside [0, 1]");
    }
    series.labels.emplace_back(text::trim(fields[0]));
    series.values.push_back(value);
  }
  check_rows(series.values.size(), expected_rows, source, "workload rows");
  return series;
}

HourlySeries load_workload(const std::filesystem::path& path,
                           std::optional<std::size_t> expected_rows) {
  auto in = open(path);
  return parse_workload(in, path.string(), expected_rows);
}

HourlySeries parse_ci(std::istream& in, const std::string& source,
                      std::optional<std::size_t> expected_rows) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(source + ": empty carbon-intensity file");
  const auto header = text::split(line, ',');
  std::vector<std::string> names;
  for (auto h : header) names.emplace_back(text::trim(h));
  if (names != kCiColumns) {
    std::string missing;
    for (const auto& col : kCiColumns) {
      if (std::find(names.begin(), names.end(), col) == names.end()) {
        missing += (missing.empty() ? "" : ", ") + col;
      }
    }
    throw FormatError(source + ": carbon-intensity header must be "
                               "'timestamp,WND,SUN,WAT,OIL,NG,COL,NUC,OTH,avg_CI'" +
                      (missing.empty() ? std::string(" in that order")
                                       : "; missing column(s): " + missing));
  }

  HourlySeries series;
  series.name = "avg_CI";
  series.units = "gCO2/kWh";
  for (std::size_t c = 1; c + 1 < kCiColumns.size(); ++c) series.aux[kCiColumns[c]];

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto fields = text::split(line, ',');
    if (fields.size() != kCiColumns.size()) {
      throw FormatError(source + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(kCiColumns.size()) + " columns, found " +
                        std::to_string(fields.size()));
    }
    for (std::size_t c = 1; c + 1 < kCiColumns.size(); ++c) {
      series.aux[kCiColumns[c]].push_back(
          number_at(fields[c], source, line_no, kCiColumns[c].c_str()));
    }
    const double ci = number_at(fields.back(), source, line_no, "avg_CI");
    if (ci < 0.0) {
      throw ValidationError(source + ": row " + std::to_string(series.values.size() + 1) +
                                " avg_CI",
                            "carbon intensity must be >= 0");
    }
    series.labels.emplace_back(text::trim(fields[0]));
    series.values.push_back(ci);
  }
  check_rows(series.values.size(), expected_rows, source, "carbon-intensity rows");
  return series;
}

HourlySeries load_ci(const std::filesystem::path& path, std::optional<std::size_t> expected_rows) {
  auto in = open(path);
  return parse_ci(in, path.string(), expected_rows);
}

WeatherSeries parse_weather(std::istream& in, const std::string& source,
                            std::optional<std::size_t> expected_records) {
  std::string line;
  for (std::size_t i = 0; i < kEpwHeaderLines; ++i) {
    if (!std::getline(in, line)) {
      throw FormatError(source + ": EPW header truncated after " + std::to_string(i) +
                        " of 8 lines");
    }
  }

  WeatherSeries out;
  out.dry_bulb.name = "dry_bulb";
  out.dry_bulb.units = "degC";
  out.rel_humidity.name = "relative_humidity";
  out.rel_humidity.units = "%";

  std::size_t line_no = kEpwHeaderLines;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto fields = text::split(line, ',');
    if (fields.size() <= kEpwRelHumField) {
      throw FormatError(source + ":" + std::to_string(line_no) + ": EPW record has " +
                        std::to_string(fields.size()) + " fields, need at least 9");
    }
    const std::size_t record = out.dry_bulb.values.size() + 1;
    const double t_db = number_at(fields[kEpwDryBulbField], source, line_no, "dry_bulb");
    const double rh = number_at(fields[kEpwRelHumField], source, line_no, "relative_humidity");
    if (t_db >= kEpwMissingDryBulb) {
      out.dry_bulb.warnings.push_back("record " + std::to_string(record) +
                                      ": dry-bulb missing-value sentinel " +
                                      text::format_double(t_db));
    }
    if (rh >= kEpwMissingRelHum) {
      out.rel_humidity.warnings.push_back("record " + std::to_string(record) +
                                          ": relative-humidity missing-value sentinel " +
                                          text::format_double(rh));
    }
    out.dry_bulb.values.push_back(t_db);
    out.rel_humidity.values.push_back(rh);
  }
  check_rows(out.dry_bulb.values.size(), expected_records, source, "EPW data records");
  return out;
}

WeatherSeries load_weather(const std::filesystem::path& path,
                           std::optional<std::size_t> expected_records) {
  auto in = open(path);
  return parse_weather(in, path.string(), expected_records);
}

void write_workload_csv(std::ostream& out, const HourlySeries& series) {
  out << ",cpu_load\n";
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    out << (i < series.labels.size() ? series.labels[i] : std::to_string(i + 1)) << ','
        << text::format_double(series.values[i]) << '\n';
  }
}

void write_ci_csv(std::ostream& out, const HourlySeries& series) {
  for (std::size_t c = 0; c < kCiColumns.size(); ++c) out << (c ? "," : "") << kCiColumns[c];
  out << '\n';
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    out << (i < series.labels.size() ? series.labels[i] : std::string());
    for (std::size_t c = 1; c + 1 < kCiColumns.size(); ++c) {
      const auto it = series.aux.find(kCiColumns[c]);
      const double v = (it != series.aux.end() && i < it->second.size()) ? it->second[i] : 0.0;
      out << ',' << text::format_double(v);
    }
    out << ',' << text::format_double(series.values[i]) << '\n';
  }
}

double wet_bulb_temp(double t_db, double rh) {
  if (!(rh >= 0.0 && rh <= 100.0)) {
    throw DomainError("wet_bulb_temp: relative humidity " + text::format_double(rh) +
                      " outside [0, 100]");
  }
  if (!(std::isfinite(t_db) && t_db > -90.0 && t_db <= 100.0)) {
    throw DomainError("wet_bulb_temp: dry-bulb " + text::format_double(t_db) +
                      " outside (-90, 100]");
  }
  if (rh == 100.0) return t_db;

  // Psychrometric equation e = e_s(Tw) - gamma * P * (T - Tw), solved for Tw
  // by bisection. The residual is increasing in Tw, so a fixed iteration count
  // gives a result that is monotone in rh.
  constexpr double kGammaP = 6.62e-4 * 101325.0;
  const double vapour = rh / 100.0 * saturation_pressure(t_db);
  double lo = std::max(t_db - 150.0, -89.0);
  double hi = t_db;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double residual = saturation_pressure(mid) - kGammaP * (t_db - mid) - vapour;
    (residual > 0.0 ? hi : lo) = mid;
  }
  return std::min(0.5 * (lo + hi), t_db);
}

std::vector<double> resample_to_steps(std::span<const double> hourly, int steps_per_hour) {
  if (steps_per_hour < 1) throw DomainError("resample_to_steps: steps_per_hour must be >= 1");
  std::vector<double> out;
  out.reserve(hourly.size() * static_cast<std::size_t>(steps_per_hour));
  for (double v : hourly) out.insert(out.end(), static_cast<std::size_t>(steps_per_hour), v);
  return out;
}

std::vector<double> forecast_window(std::span<const double> series, std::size_t t,
                                    std::size_t horizon) {
  if (series.empty()) throw DomainError("forecast_window: empty series");
  std::vector<double> out(horizon + 1);
  for (std::size_t k = 0; k <= horizon; ++k) out[k] = series[(t + k) % series.size()];
  return out;
}

SeriesBundle make_bundle(const HourlySeries& workload, const HourlySeries& ci,
                         const WeatherSeries& weather, int steps_per_hour) {
  const std::size_t n = workload.values.size();
  if (n == 0) throw FormatError("workload series is empty");
  if (ci.values.size() != n || weather.dry_bulb.values.size() != n ||
      weather.rel_humidity.values.size() != n) {
    throw FormatError("input series lengths differ: workload " + std::to_string(n) + ", CI " +
                      std::to_string(ci.values.size()) + ", weather " +
                      std::to_string(weather.dry_bulb.values.size()) + " hours");
  }

  SeriesBundle b;
  b.steps_per_hour = steps_per_hour;
  b.workload = resample_to_steps(workload.values, steps_per_hour);
  b.ci = resample_to_steps(ci.values, steps_per_hour);
  b.dry_bulb = resample_to_steps(weather.dry_bulb.values, steps_per_hour);
  b.rel_humidity = resample_to_steps(weather.rel_humidity.values, steps_per_hour);

  std::vector<double> hourly_wet(n);
  for (std::size_t h = 0; h < n; ++h) {
    try {
      hourly_wet[h] = wet_bulb_temp(weather.dry_bulb.values[h], weather.rel_humidity.values[h]);
    } catch (const DomainError& e) {
      throw ValidationError("weather record " + std::to_string(h + 1), e.what());
    }
  }
  b.wet_bulb = resample_to_steps(hourly_wet, steps_per_hour);

  for (double v : b.ci) b.ci_max = std::max(b.ci_max, v);
  return b;
}

SeriesBundle load_bundle(const ScenarioConfig& config) {
  const auto rows = static_cast<std::size_t>(config.trace_hours);
  const HourlySeries workload = load_workload(config.workload_path, rows);
  const HourlySeries ci = load_ci(config.ci_path, rows);
  const WeatherSeries weather = load_weather(config.weather_path, rows);
  return make_bundle(workload, ci, weather, config.steps_per_hour);
}

TimeFeatures time_features(std::size_t t, int steps_per_hour) {
  const std::size_t per_day = 24 * static_cast<std::size_t>(steps_per_hour);
  const double hour = static_cast<double>(t % per_day) / steps_per_hour;
  const double day = static_cast<double>((t / per_day) % 365);
  const double hour_angle = 2.0 * std::numbers::pi * hour / 24.0;
  const double day_angle = 2.0 * std::numbers::pi * day / 365.0;
  return {std::sin(hour_angle), std::cos(hour_angle), std::sin(day_angle), std::cos(day_angle)};
}

}  // namespace dcsim

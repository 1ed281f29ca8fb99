#include "dcsim/metrics.hpp"

#include <cmath>
#include <ostream>

#include "dcsim/errors.hpp"
#include "dcsim/text.hpp"

namespace dcsim {

std::array<double, 6> metric_values(const EpisodeMetrics& m) {
  return {m.cfp_kg, m.hvac_kwh, m.it_kwh, m.water_liters, m.task_queue, m.dropped_total};
}

void MetricsAccumulator::add(const StepRecord& r) {
  sums_.cfp_kg += r.cfp_kg;
  sums_.hvac_kwh += r.e_hvac_kwh;
  sums_.it_kwh += r.e_it_kwh;
  sums_.water_liters += r.water_liters;
  sums_.dropped_total += r.dropped;
  queue_sum_ += r.queue;
  ++sums_.steps;
}

EpisodeMetrics MetricsAccumulator::result() const {
  if (sums_.steps == 0) throw DomainError("aggregate: empty trace");
  EpisodeMetrics m = sums_;
  m.task_queue = queue_sum_ / static_cast<double>(sums_.steps);
  return m;
}

EpisodeMetrics aggregate(std::span<const StepRecord> records) {
  MetricsAccumulator acc;
  for (const StepRecord& r : records) acc.add(r);
  return acc.result();
}

NormalizedTable normalize_table(std::span<const NamedMetrics> metrics) {
  if (metrics.size() < 2) {
    throw ValidationError("normalize_table", "needs at least 2 controllers, got " +
                                                 std::to_string(metrics.size()));
  }
  const auto n = static_cast<double>(metrics.size());
  NormalizedTable table;
  table.rows.assign(metrics.size(), {});
  for (const NamedMetrics& m : metrics) table.controllers.push_back(m.controller);

  for (std::size_t j = 0; j < kMetricColumns.size(); ++j) {
    double mean = 0.0;
    for (const NamedMetrics& m : metrics) mean += metric_values(m.metrics)[j];
    mean /= n;
    double var = 0.0;
    for (const NamedMetrics& m : metrics) {
      const double d = metric_values(m.metrics)[j] - mean;
      var += d * d;
    }
    const double sd = std::sqrt(var / n);
    // Relative guard so rounding noise in equal columns is not blown up to ±1.
    table.zero_std[j] = !(sd > 1e-12 * std::max(1.0, std::abs(mean)));
    for (std::size_t i = 0; i < metrics.size(); ++i) {
      table.rows[i][j] =
          table.zero_std[j] ? 0.0 : (metric_values(metrics[i].metrics)[j] - mean) / sd;
    }
  }
  return table;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

void write_header(std::ostream& out) {
  out << "controller";
  for (std::string_view c : kMetricColumns) out << ',' << c;
  out << '\n';
}

}  // namespace

void write_metrics_csv(std::ostream& out, std::span<const NamedMetrics> metrics) {
  write_header(out);
  for (const NamedMetrics& m : metrics) {
    out << csv_field(m.controller);
    for (double v : metric_values(m.metrics)) out << ',' << text::format_double(v);
    out << '\n';
  }
}

nlohmann::json metrics_json(std::span<const NamedMetrics> metrics) {
  nlohmann::json rows = nlohmann::json::array();
  for (const NamedMetrics& m : metrics) {
    nlohmann::json obj = nlohmann::json::object();
    obj["controller"] = m.controller;
    const auto values = metric_values(m.metrics);
    for (std::size_t j = 0; j < kMetricColumns.size(); ++j) {
      obj[std::string(kMetricColumns[j])] = values[j];
    }
    obj["steps"] = m.metrics.steps;
    rows.push_back(std::move(obj));
  }
  return {{"columns", kMetricColumns}, {"rows", rows}};
}

void write_table_csv(std::ostream& out, const NormalizedTable& table) {
  write_header(out);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    out << csv_field(table.controllers[i]);
    for (double z : table.rows[i]) out << ',' << text::format_double(z);
    out << '\n';
  }
}

nlohmann::json table_json(const NormalizedTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    nlohmann::json obj = nlohmann::json::object();
    obj["controller"] = table.controllers[i];
    for (std::size_t j = 0; j < kMetricColumns.size(); ++j) {
      obj[std::string(kMetricColumns[j])] = table.rows[i][j];
    }
    rows.push_back(std::move(obj));
  }
  nlohmann::json zero = nlohmann::json::object();
  for (std::size_t j = 0; j < kMetricColumns.size(); ++j) {
    zero[std::string(kMetricColumns[j])] = table.zero_std[j];
  }
  return {{"orientation", "lower_is_better"},
          {"std", "population"},
          {"zero_std", zero},
          {"rows", rows}};
}

}  // namespace dcsim

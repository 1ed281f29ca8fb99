#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dcsim/records.hpp"

namespace dcsim {

struct EpisodeMetrics {
  double cfp_kg = 0.0;
  double hvac_kwh = 0.0;
  double it_kwh = 0.0;
  double water_liters = 0.0;
  double task_queue = 0.0;  // mean queue after each step
  double dropped_total = 0.0;
  std::size_t steps = 0;

  bool operator==(const EpisodeMetrics&) const = default;
};

inline constexpr std::array<std::string_view, 6> kMetricColumns = {
    "cfp_kg", "hvac_kwh", "it_kwh", "water_liters", "task_queue", "dropped_total"};

/// Metric values in kMetricColumns order.
std::array<double, 6> metric_values(const EpisodeMetrics& m);

/// Streaming form of aggregate(), so long runs need not keep the trace.
class MetricsAccumulator {
 public:
  void add(const StepRecord& r);
  /// Throws DomainError if nothing was added.
  EpisodeMetrics result() const;

 private:
  EpisodeMetrics sums_;
  double queue_sum_ = 0.0;
};

/// Throws DomainError on an empty trace.
EpisodeMetrics aggregate(std::span<const StepRecord> records);

struct NamedMetrics {
  std::string controller;
  EpisodeMetrics metrics;
};

/// z-scores per metric column with population std. Every metric is
/// lower-is-better, so a more negative z is always the better controller.
struct NormalizedTable {
  std::vector<std::string> controllers;
  /// rows[i][j]: controller i, column kMetricColumns[j].
  std::vector<std::array<double, 6>> rows;
  /// Columns whose std was 0; emitted as all zeros.
  std::array<bool, 6> zero_std{};
};

/// Throws ValidationError for fewer than two rows.
NormalizedTable normalize_table(std::span<const NamedMetrics> metrics);

void write_metrics_csv(std::ostream& out, std::span<const NamedMetrics> metrics);
nlohmann::json metrics_json(std::span<const NamedMetrics> metrics);
void write_table_csv(std::ostream& out, const NormalizedTable& table);
nlohmann::json table_json(const NormalizedTable& table);

/// RFC 4180 quoting, applied only when the field needs it.
std::string csv_field(std::string_view s);

}  // namespace dcsim

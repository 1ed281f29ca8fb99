#include "dcsim/cli.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcsim/errors.hpp"
#include "dcsim/orchestrator.hpp"
#include "dcsim/session.hpp"
#include "dcsim/text.hpp"

namespace dcsim {

namespace fs = std::filesystem;

namespace {

const char* kDefaultControllers = "ls=baseline,dc=g36,bat=ci3h";

struct RunOptions {
  std::string config;
  std::vector<std::string> controllers;
  std::optional<int> horizon;
  std::optional<int> start_step;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  bool trace = false;
  int repeat = 1;
  std::vector<std::string> locations;
  int jobs = 1;
};

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e)) {
    return kExitValidation;
  }
  return kExitRuntime;
}

const char* kind_of(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const FormatError*>(&e)) return "FormatError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const ContractError*>(&e)) return "ContractError";
  return "Error";
}

nlohmann::json error_json(const std::exception& e) {
  return {{"kind", kind_of(e)}, {"message", e.what()}};
}

ScenarioConfig load_with_overrides(const RunOptions& o) {
  ScenarioConfig c = load_scenario(o.config);
  if (o.horizon) c.horizon_steps = *o.horizon;
  if (o.start_step) c.start_step = *o.start_step;
  if (o.seed) c.seed = *o.seed;
  validate(c);
  return c;
}

std::vector<ControllerSelection> selections(const RunOptions& o) {
  std::vector<ControllerSelection> out;
  if (o.controllers.empty()) {
    out.push_back(parse_controllers(kDefaultControllers));
  } else {
    for (const std::string& s : o.controllers) out.push_back(parse_controllers(s));
  }
  return out;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << contents;
  if (!f) throw Error("write failed for '" + path.string() + "'");
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ValidationError("out", "cannot create output directory '" + dir.string() + "'");
  }
}

std::string csv_of(const std::vector<NamedMetrics>& rows) {
  std::ostringstream s;
  write_metrics_csv(s, rows);
  return s.str();
}

void print_summary(std::ostream& out, const std::vector<NamedMetrics>& rows) {
  for (const NamedMetrics& m : rows) {
    out << m.controller << '\n';
    const auto values = metric_values(m.metrics);
    for (std::size_t j = 0; j < kMetricColumns.size(); ++j) {
      out << "  " << kMetricColumns[j] << " = " << text::format_double(values[j]) << '\n';
    }
  }
}

int cmd_run(const RunOptions& o, std::ostream& out) {
  if (o.repeat < 1) throw ValidationError("repeat", "must be >= 1");
  const ScenarioConfig config = load_with_overrides(o);
  const auto sels = selections(o);
  const Environment env = Environment::from_config(config);

  std::vector<NamedMetrics> rows;
  std::string trace;
  for (const ControllerSelection& sel : sels) {
    for (int k = 0; k < o.repeat; ++k) {
      ControllerSet c = make_controllers(sel, config, config.seed);
      const EpisodeResult r =
          run_episode(env, c, static_cast<std::size_t>(config.start_step),
                      static_cast<std::size_t>(config.horizon_steps), o.trace && trace.empty());
      std::string label = sel.label();
      if (o.repeat > 1) label += "#" + std::to_string(k + 1);
      rows.push_back({label, r.metrics});
      if (o.trace && trace.empty()) {
        std::ostringstream s;
        write_trace_csv(s, r.records);
        trace = s.str();
      }
    }
  }

  nlohmann::json doc = metrics_json(rows);
  doc["horizon_steps"] = config.horizon_steps;
  doc["start_step"] = config.start_step;
  doc["seed"] = config.seed;
  doc["layout_version"] = obs::kLayoutVersion;
  std::string table_csv;
  if (rows.size() >= 2) {
    const NormalizedTable t = normalize_table(rows);
    doc["normalized"] = table_json(t);
    std::ostringstream s;
    write_table_csv(s, t);
    table_csv = s.str();
  }

  const fs::path dir(o.out_dir);
  prepare_out_dir(dir);
  write_file(dir / "metrics.csv", csv_of(rows));
  write_file(dir / "metrics.json", doc.dump(2) + "\n");
  if (!table_csv.empty()) write_file(dir / "normalized.csv", table_csv);
  if (o.trace) write_file(dir / "trace.csv", trace);
  print_summary(out, rows);
  return kExitOk;
}

struct Location {
  std::string name;
  fs::path ci;
  fs::path weather;
  std::optional<fs::path> workload;
};

Location parse_location(const std::string& spec) {
  const auto parts = text::split(spec, ':');
  if (parts.size() < 3 || parts.size() > 4) {
    throw ValidationError("locations", "expected NAME:CI_CSV:EPW[:WORKLOAD_CSV], got '" + spec + "'");
  }
  Location l{std::string(parts[0]), fs::path(std::string(parts[1])),
             fs::path(std::string(parts[2])), std::nullopt};
  if (parts.size() == 4) l.workload = fs::path(std::string(parts[3]));
  if (l.name.empty()) throw ValidationError("locations", "empty location name in '" + spec + "'");
  return l;
}

struct Cell {
  std::size_t location = 0;
  std::size_t controller = 0;
  std::optional<EpisodeMetrics> metrics;
  nlohmann::json error;
};

int cmd_sweep(const RunOptions& o, std::ostream& out, std::ostream& err) {
  if (o.locations.empty()) throw ValidationError("locations", "at least one location required");
  if (o.jobs < 1) throw ValidationError("jobs", "must be >= 1");
  const ScenarioConfig base = load_with_overrides(o);
  const auto sels = selections(o);
  std::vector<Location> locs;
  for (const std::string& s : o.locations) locs.push_back(parse_location(s));

  // Data is loaded once per location; a failed load fails every cell there.
  std::vector<std::shared_ptr<const Environment>> envs(locs.size());
  std::vector<nlohmann::json> load_errors(locs.size());
  std::vector<ScenarioConfig> configs(locs.size(), base);
  for (std::size_t i = 0; i < locs.size(); ++i) {
    configs[i].ci_path = locs[i].ci;
    configs[i].weather_path = locs[i].weather;
    if (locs[i].workload) configs[i].workload_path = *locs[i].workload;
    try {
      envs[i] = std::make_shared<const Environment>(Environment::from_config(configs[i]));
    } catch (const std::exception& e) {
      load_errors[i] = error_json(e);
    }
  }

  std::vector<Cell> cells;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    for (std::size_t j = 0; j < sels.size(); ++j) cells.push_back({i, j, std::nullopt, {}});
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      Cell& cell = cells[k];
      if (!envs[cell.location]) {
        cell.error = load_errors[cell.location];
        continue;
      }
      try {
        const ScenarioConfig& c = configs[cell.location];
        ControllerSet ctl = make_controllers(sels[cell.controller], c, c.seed);
        cell.metrics = run_episode(*envs[cell.location], ctl, static_cast<std::size_t>(c.start_step),
                                   static_cast<std::size_t>(c.horizon_steps), false)
                           .metrics;
      } catch (const std::exception& e) {
        cell.error = error_json(e);
      }
    }
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(o.jobs), cells.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<NamedMetrics> rows;
  nlohmann::json failures = nlohmann::json::array();
  nlohmann::json tables = nlohmann::json::object();
  std::ostringstream table_csv;
  bool table_header = false;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    std::vector<NamedMetrics> local;
    for (const Cell& cell : cells) {
      if (cell.location != i) continue;
      const std::string label = locs[i].name + "|" + sels[cell.controller].label();
      if (cell.metrics) {
        local.push_back({label, *cell.metrics});
      } else {
        failures.push_back({{"location", locs[i].name},
                            {"controller", sels[cell.controller].label()},
                            {"error", cell.error}});
      }
    }
    if (local.size() >= 2) {
      const NormalizedTable t = normalize_table(local);
      tables[locs[i].name] = table_json(t);
      std::ostringstream s;
      write_table_csv(s, t);
      std::string body = s.str();
      if (table_header) body = body.substr(body.find('\n') + 1);
      table_header = true;
      table_csv << body;
    }
    rows.insert(rows.end(), local.begin(), local.end());
  }

  nlohmann::json doc = metrics_json(rows);
  doc["normalized"] = tables;
  doc["failures"] = failures;
  doc["layout_version"] = obs::kLayoutVersion;
  const fs::path dir(o.out_dir);
  prepare_out_dir(dir);
  write_file(dir / "metrics.csv", csv_of(rows));
  write_file(dir / "metrics.json", doc.dump(2) + "\n");
  if (table_header) write_file(dir / "normalized.csv", table_csv.str());
  print_summary(out, rows);
  for (const auto& f : failures) err << nlohmann::json{{"failure", f}}.dump() << '\n';
  return failures.empty() ? kExitOk : kExitPartialSweep;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Data-center carbon simulator"};
  app.require_subcommand(1);
  RunOptions o;

  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "Scenario JSON")->required();
    cmd->add_option("--controllers", o.controllers,
                    "ls=...,dc=...,bat=... (repeat for several sets)");
    cmd->add_option("--horizon", o.horizon, "Steps per episode");
    cmd->add_option("--start-step", o.start_step, "First step of the trace");
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_option("--seed", o.seed, "Seed for random policies");
  };
  CLI::App* run = app.add_subcommand("run", "Run one episode per controller set");
  add_common(run);
  run->add_flag("--trace", o.trace, "Also write trace.csv (first controller set)");
  run->add_option("--repeat", o.repeat, "Episodes per controller set");

  CLI::App* sweep = app.add_subcommand("sweep", "Locations × controller sets");
  add_common(sweep);
  sweep->add_option("--locations", o.locations, "NAME:CI_CSV:EPW[:WORKLOAD_CSV]")->required();
  sweep->add_option("--jobs", o.jobs, "Concurrent cells");

  app.add_subcommand("serve", "Line-delimited JSON reset/step protocol on stdin/stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << nlohmann::json{{"error", {{"kind", "UsageError"}, {"message", e.what()}}}}.dump()
        << '\n';
    return kExitValidation;
  }

  try {
    if (*run) return cmd_run(o, out);
    if (*sweep) return cmd_sweep(o, out, err);
    serve(in, out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << nlohmann::json{{"error", error_json(e)}}.dump() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace dcsim

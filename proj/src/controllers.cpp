#include "dcsim/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dcsim/errors.hpp"
#include "dcsim/text.hpp"

namespace dcsim {

namespace {

class ConstantPolicy final : public Policy {
 public:
  ConstantPolicy(int action, std::string label) : action_(action), label_(std::move(label)) {}
  int act(std::span<const double>) override { return action_; }
  std::string name() const override { return label_; }

 private:
  int action_;
  std::string label_;
};

void require_size(std::span<const double> obs, std::size_t n, const char* who) {
  if (obs.size() < n) {
    throw ContractError(std::string(who) + ": observation has " + std::to_string(obs.size()) +
                        " entries, expected " + std::to_string(n));
  }
}

class DeadBandDc final : public Policy {
 public:
  DeadBandDc(obs::DcLayout layout, double lower, double upper)
      : layout_(layout), lower_(lower), upper_(upper) {}

  int act(std::span<const double> o) override {
    require_size(o, layout_.size(), "g36");
    const double room = o[obs::DcLayout::kRoomTemp];
    if (room > upper_) return 0;
    if (room < lower_) return 2;
    return 1;
  }
  std::string name() const override { return "g36"; }

 private:
  obs::DcLayout layout_;
  double lower_;
  double upper_;
};

class CiWindowBattery final : public Policy {
 public:
  CiWindowBattery(obs::BatLayout layout, std::size_t lookahead, double margin)
      : layout_(layout), lookahead_(std::min(lookahead, layout.forecast_len)), margin_(margin) {}

  int act(std::span<const double> o) override {
    require_size(o, layout_.size(), "ci3h");
    if (lookahead_ == 0) return 1;
    const double now = o[obs::BatLayout::kCiBegin];
    const auto first = o.begin() + static_cast<std::ptrdiff_t>(obs::BatLayout::kCiBegin + 1);
    const double mean =
        std::accumulate(first, first + static_cast<std::ptrdiff_t>(lookahead_), 0.0) /
        static_cast<double>(lookahead_);
    const double band = margin_ * mean;
    if (now < mean - band) return 0;
    if (now > mean + band) return 2;
    return 1;
  }
  std::string name() const override { return "ci3h"; }

 private:
  obs::BatLayout layout_;
  std::size_t lookahead_;
  double margin_;
};

class GreedyLs final : public Policy {
 public:
  GreedyLs(obs::LsLayout layout, double p) : layout_(layout), p_(p) {}

  int act(std::span<const double> o) override {
    require_size(o, layout_.size(), "greedy");
    const auto window = o.subspan(obs::LsLayout::kCiBegin, layout_.forecast_len + 1);
    const double now = window[0];
    if (now > percentile(window, p_)) return 0;
    if (now < percentile(window, 100.0 - p_)) return 2;
    return 1;
  }
  std::string name() const override { return "greedy"; }

 private:
  obs::LsLayout layout_;
  double p_;
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : seed_(seed), rng_(seed) {}
  int act(std::span<const double>) override { return static_cast<int>(rng_() % 3); }
  void reset() override { rng_.seed(seed_); }
  std::string name() const override { return "random"; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

struct Spec {
  std::string head;
  std::vector<double> args;
};

Spec parse_spec(std::string_view text, const std::string& field) {
  const auto parts = text::split(text, ':');
  Spec s;
  s.head = std::string(text::trim(parts.at(0)));
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto v = text::parse_double(text::trim(parts[i]));
    if (!v) throw ValidationError(field, "bad numeric parameter in '" + std::string(text) + "'");
    s.args.push_back(*v);
  }
  return s;
}

void require_args(const Spec& s, std::size_t max_args, const std::string& field) {
  if (s.args.size() > max_args) {
    throw ValidationError(field, "too many parameters for '" + s.head + "'");
  }
}

// Distinct streams per agent from one run seed.
std::uint64_t agent_seed(std::uint64_t seed, std::uint64_t agent) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(agent)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace

double percentile(std::span<const double> values, double p) {
  if (values.empty()) throw DomainError("percentile: empty input");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double rank = std::clamp(p, 0.0, 100.0) / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (rank - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::unique_ptr<Policy> baseline_ls() { return constant_policy(1, "baseline"); }

std::unique_ptr<Policy> baseline_dc(obs::DcLayout layout, double lower_c, double upper_c) {
  if (!(lower_c <= upper_c)) throw ValidationError("controllers.dc", "lower bound above upper");
  return std::make_unique<DeadBandDc>(layout, lower_c, upper_c);
}

std::unique_ptr<Policy> baseline_bat(obs::BatLayout layout, std::size_t lookahead_steps,
                                     double margin) {
  if (!(margin >= 0.0)) throw ValidationError("controllers.bat", "margin must be >= 0");
  return std::make_unique<CiWindowBattery>(layout, lookahead_steps, margin);
}

std::unique_ptr<Policy> greedy_ls(obs::LsLayout layout, double p) {
  if (!(p > 50.0 && p < 100.0)) {
    throw ValidationError("controllers.ls", "greedy percentile must be in (50, 100), got " +
                                                text::format_double(p));
  }
  return std::make_unique<GreedyLs>(layout, p);
}

std::unique_ptr<Policy> constant_policy(int action, std::string label) {
  if (action < 0 || action > 2) throw ValidationError("controllers", "action must be 0, 1 or 2");
  return std::make_unique<ConstantPolicy>(action, std::move(label));
}

std::unique_ptr<Policy> random_policy(std::uint64_t seed) {
  return std::make_unique<RandomPolicy>(seed);
}

std::string ControllerSelection::label() const {
  return "ls=" + ls + ",dc=" + dc + ",bat=" + bat;
}

ControllerSelection parse_controllers(std::string_view text) {
  ControllerSelection sel;
  for (std::string_view item : text::split(text, ',')) {
    item = text::trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("controllers", "expected agent=name, got '" + std::string(item) + "'");
    }
    const std::string_view agent = text::trim(item.substr(0, eq));
    const std::string name(text::trim(item.substr(eq + 1)));
    if (name.empty()) throw ValidationError("controllers", "empty policy name for " + std::string(agent));
    if (agent == "ls") {
      sel.ls = name;
    } else if (agent == "dc") {
      sel.dc = name;
    } else if (agent == "bat") {
      sel.bat = name;
    } else {
      throw ValidationError("controllers", "unknown agent '" + std::string(agent) +
                                               "' (expected ls, dc or bat)");
    }
  }
  return sel;
}

std::unique_ptr<Policy> make_ls_policy(std::string_view spec, const PolicyContext& ctx) {
  const std::string field = "controllers.ls";
  const Spec s = parse_spec(spec, field);
  if (s.head == "baseline") {
    require_args(s, 0, field);
    return baseline_ls();
  }
  if (s.head == "greedy") {
    require_args(s, 1, field);
    return greedy_ls(obs::LsLayout{ctx.forecast_len}, s.args.empty() ? 75.0 : s.args[0]);
  }
  if (s.head == "defer") return constant_policy(0, "defer");
  if (s.head == "process") return constant_policy(2, "process");
  if (s.head == "random") return random_policy(agent_seed(ctx.seed, 0));
  throw ValidationError(field, "unknown policy '" + s.head +
                                   "' (known: baseline, greedy, defer, process, random)");
}

std::unique_ptr<Policy> make_dc_policy(std::string_view spec, const PolicyContext& ctx) {
  const std::string field = "controllers.dc";
  const Spec s = parse_spec(spec, field);
  if (s.head == "g36") {
    if (s.args.size() != 0 && s.args.size() != 2) {
      throw ValidationError(field, "g36 takes either no parameters or lower:upper");
    }
    const obs::DcLayout layout{ctx.forecast_len};
    return s.args.empty() ? baseline_dc(layout) : baseline_dc(layout, s.args[0], s.args[1]);
  }
  if (s.head == "maintain") return constant_policy(1, "maintain");
  if (s.head == "random") return random_policy(agent_seed(ctx.seed, 1));
  throw ValidationError(field, "unknown policy '" + s.head + "' (known: g36, maintain, random)");
}

std::unique_ptr<Policy> make_bat_policy(std::string_view spec, const PolicyContext& ctx) {
  const std::string field = "controllers.bat";
  const Spec s = parse_spec(spec, field);
  if (s.head == "ci3h") {
    require_args(s, 1, field);
    const auto lookahead = static_cast<std::size_t>(3 * ctx.steps_per_hour);
    return baseline_bat(obs::BatLayout{ctx.forecast_len}, lookahead,
                        s.args.empty() ? 0.05 : s.args[0]);
  }
  if (s.head == "idle") return constant_policy(1, "idle");
  if (s.head == "charge") return constant_policy(0, "charge");
  if (s.head == "discharge") return constant_policy(2, "discharge");
  if (s.head == "random") return random_policy(agent_seed(ctx.seed, 2));
  throw ValidationError(field, "unknown policy '" + s.head +
                                   "' (known: ci3h, idle, charge, discharge, random)");
}

}  // namespace dcsim

#pragma once

#include <cstddef>

namespace dcsim::obs {

/// Bumped whenever any index below changes meaning. Golden traces and the
/// external adapter protocol report it.
inline constexpr int kLayoutVersion = 1;

// Shared prefix of every agent's vector.
inline constexpr std::size_t kSinHour = 0;
inline constexpr std::size_t kCosHour = 1;
inline constexpr std::size_t kSinDay = 2;
inline constexpr std::size_t kCosDay = 3;

/// Load shifting: [time(4), workload B_t, queue / queue_max,
///                 CI window (L+1, / trace max), battery SoC].
struct LsLayout {
  static constexpr std::size_t kWorkload = 4;
  static constexpr std::size_t kQueue = 5;
  static constexpr std::size_t kCiBegin = 6;
  std::size_t forecast_len = 0;

  std::size_t ci_end() const { return kCiBegin + forecast_len + 1; }
  std::size_t soc() const { return ci_end(); }
  std::size_t size() const { return ci_end() + 1; }
};

/// Cooling: [time(4), dry-bulb °C, room temperature °C, previous-step
///           E_hvac kWh, previous-step E_it kWh, CI window (L+1, / trace max)].
struct DcLayout {
  static constexpr std::size_t kDryBulb = 4;
  static constexpr std::size_t kRoomTemp = 5;
  static constexpr std::size_t kLastHvacKwh = 6;
  static constexpr std::size_t kLastItKwh = 7;
  static constexpr std::size_t kCiBegin = 8;
  std::size_t forecast_len = 0;

  std::size_t ci_end() const { return kCiBegin + forecast_len + 1; }
  std::size_t size() const { return ci_end(); }
};

/// Battery: [time(4), SoC fraction, previous-step DC load normalised to the
///           reward bounds, CI window (L+1, / trace max)].
struct BatLayout {
  static constexpr std::size_t kSoc = 4;
  static constexpr std::size_t kDcLoad = 5;
  static constexpr std::size_t kCiBegin = 6;
  std::size_t forecast_len = 0;

  std::size_t ci_end() const { return kCiBegin + forecast_len + 1; }
  std::size_t size() const { return ci_end(); }
};

}  // namespace dcsim::obs

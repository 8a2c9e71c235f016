#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mcchan/channel_config.hpp"

namespace mcchan::cli {

enum class ReleaseMode { kPulse, kContinuous };

/// One experiment: a channel config plus the release pattern driving it.
///
/// Scenario files use the same flat `key = value` format as channel configs
/// plus the keys `mode, u0, K, seed, particles, name`. Velocity and spatial
/// step may alternatively be given in micrometer units through the suffixed
/// keys `v_um_s` and `dx_um`, converted at parse time.
struct Scenario {
  std::string name;
  ChannelConfig config;
  ReleaseMode mode = ReleaseMode::kPulse;
  double u0 = 0.0;
  std::int64_t steps = 0;        // K
  std::uint64_t seed = 1;
  std::int64_t particles = -1;   // -1: derive from u0 when a PBS run needs it
};

enum class SweepAxis { kVelocity, kReceiver, kNumStates, kKOn, kKOff, kU0 };

/// A scenario swept along one parameter axis.
struct SweepSpec {
  Scenario base;
  SweepAxis axis = SweepAxis::kVelocity;
  std::vector<double> values;
};

Scenario parse_scenario(std::string_view text, std::string_view origin,
                        std::string_view default_name);
Scenario load_scenario(const std::filesystem::path& path);

/// Sweep files are scenario files plus `axis` (one of v, r, N, k_on, k_off,
/// u0) and `values` (comma- or space-separated reals).
SweepSpec parse_sweep(std::string_view text, std::string_view origin,
                      std::string_view default_name);
SweepSpec load_sweep(const std::filesystem::path& path);

const char* axis_key(SweepAxis axis);

/// Copy of `base` with the axis parameter replaced. Integer axes (r, N)
/// reject non-integral values.
Scenario apply_axis(const Scenario& base, SweepAxis axis, double value);

}  // namespace mcchan::cli

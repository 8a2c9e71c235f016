#pragma once

#include <filesystem>
#include <string_view>

#include "mcchan/errors.hpp"

namespace mcchan {

/// Physical and discretization parameters of one channel scenario.
/// All quantities are strict SI.
struct ChannelConfig {
  double diffusion = 0.0;      // D   [m^2/s]
  double velocity = 0.0;       // v   [m/s], mean axial flow
  double k_on = 0.0;           // association rate constant [1/(M s)]
  double k_off = 0.0;          // dissociation rate constant [1/s]
  double receptor_conc = 0.0;  // c_p [M]
  double dx = 0.0;             // spatial step [m]
  double dt = 0.0;             // time step [s]
  int num_states = 0;          // N: free states s1..s_{N-1} plus bound state s_N
  int receiver = 0;            // r: receiver free-state index, 1-based

  /// Channel length L = (N-1) dx.
  double channel_length() const { return (num_states - 1) * dx; }
  /// Transmitter-receiver distance d = r dx.
  double receiver_distance() const { return receiver * dx; }
};

/// The four per-step transition probabilities of the chain.
struct ElementaryProbabilities {
  double p_diff = 0.0;    // D dt / dx^2, hop to a neighboring spatial state
  double p_bind = 0.0;    // k_on c_p dt, capture at the receiver surface
  double p_unbind = 0.0;  // k_off dt,   release from the bound state
  double p_flow = 0.0;    // v dt / dx,  advective hop toward the outlet
};

class ValidatedConfig;

/// Raw probability formulas, no range checks. Used by validation and tests.
ElementaryProbabilities derive_probabilities(const ChannelConfig& cfg);

/// Checks every config invariant and every derived-probability bound.
///
/// Throws NonPositiveStep (dx or dt <= 0), IndexError (N or r out of range)
/// or StabilityViolation (a probability outside [0,1] or a self-transition
/// that would turn negative), naming the offending quantity. Validation is
/// strict: nothing is clamped.
ValidatedConfig validate_config(const ChannelConfig& cfg);

/// Elementary probabilities of a validated config; cannot fail.
ElementaryProbabilities elementary_probabilities(const ValidatedConfig& cfg);

/// Peclet number Pe = v L / D with L = (N-1) dx.
double peclet_number(const ChannelConfig& cfg);

/// Parses the flat `key = value` config format. Keys are exactly
/// D, v, k_on, k_off, c_p, dx, dt, N, r; `#` starts a comment; unknown or
/// missing keys are an error. The result is not yet validated.
ChannelConfig parse_channel_config(std::string_view text,
                                   std::string_view origin = "<config>");

/// parse_channel_config() on a file's contents.
ChannelConfig load_channel_config(const std::filesystem::path& path);

/// A ChannelConfig that passed validate_config(). Constructible only through
/// validate_config so downstream code can rely on the invariants.
class ValidatedConfig {
 public:
  const ChannelConfig& get() const { return cfg_; }
  const ChannelConfig* operator->() const { return &cfg_; }

 private:
  friend ValidatedConfig validate_config(const ChannelConfig&);
  explicit ValidatedConfig(const ChannelConfig& cfg) : cfg_(cfg) {}
  ChannelConfig cfg_;
};

}  // namespace mcchan

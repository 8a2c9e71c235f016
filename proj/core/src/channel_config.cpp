#include "mcchan/channel_config.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "mcchan/key_value.hpp"

namespace mcchan {

namespace {

[[noreturn]] void stability(const char* name, double value,
                            const char* bound) {
  std::ostringstream msg;
  msg << name << " = " << value << " violates " << bound;
  throw StabilityViolation(msg.str());
}

void check_probability(const char* name, double p) {
  if (!(p >= 0.0 && p <= 1.0)) stability(name, p, "0 <= p <= 1");
}

}  // namespace

ElementaryProbabilities derive_probabilities(const ChannelConfig& cfg) {
  ElementaryProbabilities ep;
  ep.p_diff = cfg.diffusion * cfg.dt / (cfg.dx * cfg.dx);
  ep.p_bind = cfg.k_on * cfg.receptor_conc * cfg.dt;
  ep.p_unbind = cfg.k_off * cfg.dt;
  ep.p_flow = cfg.velocity * cfg.dt / cfg.dx;
  return ep;
}

ValidatedConfig validate_config(const ChannelConfig& cfg) {
  if (!(cfg.dx > 0.0)) throw NonPositiveStep("dx must be > 0");
  if (!(cfg.dt > 0.0)) throw NonPositiveStep("dt must be > 0");
  if (cfg.num_states < 4) throw IndexError("N must be >= 4");
  if (cfg.receiver < 2 || cfg.receiver > cfg.num_states - 2) {
    std::ostringstream msg;
    msg << "r = " << cfg.receiver << " outside 2 <= r <= N-2 = "
        << cfg.num_states - 2;
    throw IndexError(msg.str());
  }
  if (!(cfg.diffusion >= 0.0)) stability("D", cfg.diffusion, "D >= 0");
  if (!(cfg.velocity >= 0.0)) stability("v", cfg.velocity, "v >= 0");
  if (!(cfg.k_on >= 0.0)) stability("k_on", cfg.k_on, "k_on >= 0");
  if (!(cfg.k_off >= 0.0)) stability("k_off", cfg.k_off, "k_off >= 0");
  if (!(cfg.receptor_conc >= 0.0))
    stability("c_p", cfg.receptor_conc, "c_p >= 0");

  const ElementaryProbabilities ep = derive_probabilities(cfg);
  check_probability("p_diff", ep.p_diff);
  check_probability("p_bind", ep.p_bind);
  check_probability("p_unbind", ep.p_unbind);
  check_probability("p_flow", ep.p_flow);
  // Self-transitions are column complements; they stay nonnegative iff the
  // outgoing probabilities of the busiest columns stay within 1.
  const double interior_out = 2.0 * ep.p_diff + ep.p_flow;
  if (!(interior_out <= 1.0))
    stability("2 p_diff + p_flow", interior_out, "<= 1");
  const double receiver_out = interior_out + ep.p_bind;
  if (!(receiver_out <= 1.0))
    stability("2 p_diff + p_flow + p_bind", receiver_out, "<= 1");
  return ValidatedConfig(cfg);
}

ElementaryProbabilities elementary_probabilities(const ValidatedConfig& cfg) {
  return derive_probabilities(cfg.get());
}

double peclet_number(const ChannelConfig& cfg) {
  return cfg.velocity * cfg.channel_length() / cfg.diffusion;
}

ChannelConfig parse_channel_config(std::string_view text,
                                   std::string_view origin) {
  ChannelConfig cfg;
  std::map<std::string, bool> required = {
      {"D", false},  {"v", false},  {"k_on", false}, {"k_off", false},
      {"c_p", false}, {"dx", false}, {"dt", false},   {"N", false},
      {"r", false}};
  for (const KeyValue& kv : parse_key_values(text, origin)) {
    auto it = required.find(kv.key);
    if (it == required.end()) {
      throw ParseError(kv.origin + ":" + std::to_string(kv.line) +
                       ": unknown key '" + kv.key + "'");
    }
    it->second = true;
    if (kv.key == "D") cfg.diffusion = parse_real(kv);
    else if (kv.key == "v") cfg.velocity = parse_real(kv);
    else if (kv.key == "k_on") cfg.k_on = parse_real(kv);
    else if (kv.key == "k_off") cfg.k_off = parse_real(kv);
    else if (kv.key == "c_p") cfg.receptor_conc = parse_real(kv);
    else if (kv.key == "dx") cfg.dx = parse_real(kv);
    else if (kv.key == "dt") cfg.dt = parse_real(kv);
    else if (kv.key == "N") cfg.num_states = static_cast<int>(parse_integer(kv));
    else cfg.receiver = static_cast<int>(parse_integer(kv));
  }
  for (const auto& [key, present] : required) {
    if (!present)
      throw ParseError(std::string(origin) + ": missing key '" + key + "'");
  }
  return cfg;
}

ChannelConfig load_channel_config(const std::filesystem::path& path) {
  return parse_channel_config(read_text_file(path), path.string());
}

}  // namespace mcchan

#include "scenario.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "mcchan/errors.hpp"
#include "mcchan/key_value.hpp"

namespace mcchan::cli {

namespace {

[[noreturn]] void fail(const KeyValue& kv, const std::string& what) {
  throw ParseError(kv.origin + ":" + std::to_string(kv.line) + ": key '" +
                   kv.key + "': " + what);
}

struct ScenarioParser {
  Scenario scenario;
  std::map<std::string, int> seen;  // key -> line, for alias conflicts
  bool sweep_allowed = false;
  SweepAxis axis = SweepAxis::kVelocity;
  std::vector<double> values;
  bool has_axis = false, has_values = false;

  void require_once(const KeyValue& kv, const char* canonical) {
    auto [it, inserted] = seen.emplace(canonical, kv.line);
    if (!inserted)
      fail(kv, std::string("duplicates '") + canonical + "' set on line " +
                   std::to_string(it->second));
  }

  bool handle(const KeyValue& kv) {
    ChannelConfig& cfg = scenario.config;
    if (kv.key == "D") cfg.diffusion = parse_real(kv);
    else if (kv.key == "v") { require_once(kv, "v"); cfg.velocity = parse_real(kv); }
    else if (kv.key == "v_um_s") { require_once(kv, "v"); cfg.velocity = parse_real(kv) * 1e-6; }
    else if (kv.key == "k_on") cfg.k_on = parse_real(kv);
    else if (kv.key == "k_off") cfg.k_off = parse_real(kv);
    else if (kv.key == "c_p") cfg.receptor_conc = parse_real(kv);
    else if (kv.key == "dx") { require_once(kv, "dx"); cfg.dx = parse_real(kv); }
    else if (kv.key == "dx_um") { require_once(kv, "dx"); cfg.dx = parse_real(kv) * 1e-6; }
    else if (kv.key == "dt") cfg.dt = parse_real(kv);
    else if (kv.key == "N") cfg.num_states = static_cast<int>(parse_integer(kv));
    else if (kv.key == "r") cfg.receiver = static_cast<int>(parse_integer(kv));
    else if (kv.key == "name") scenario.name = kv.value;
    else if (kv.key == "mode") {
      if (kv.value == "pulse") scenario.mode = ReleaseMode::kPulse;
      else if (kv.value == "continuous") scenario.mode = ReleaseMode::kContinuous;
      else fail(kv, "expected 'pulse' or 'continuous'");
    } else if (kv.key == "u0") {
      scenario.u0 = parse_real(kv);
      if (scenario.u0 < 0.0) fail(kv, "u0 must be >= 0");
    } else if (kv.key == "K") {
      scenario.steps = parse_integer(kv);
      if (scenario.steps < 0) fail(kv, "K must be >= 0");
    } else if (kv.key == "seed") {
      scenario.seed = parse_seed(kv);
    } else if (kv.key == "particles") {
      scenario.particles = parse_integer(kv);
      if (scenario.particles < 1) fail(kv, "particles must be >= 1");
    } else {
      return false;
    }
    seen.emplace(kv.key, kv.line);
    return true;
  }

  void handle_sweep(const KeyValue& kv) {
    if (kv.key == "axis") {
      has_axis = true;
      if (kv.value == "v") axis = SweepAxis::kVelocity;
      else if (kv.value == "r") axis = SweepAxis::kReceiver;
      else if (kv.value == "N") axis = SweepAxis::kNumStates;
      else if (kv.value == "k_on") axis = SweepAxis::kKOn;
      else if (kv.value == "k_off") axis = SweepAxis::kKOff;
      else if (kv.value == "u0") axis = SweepAxis::kU0;
      else fail(kv, "expected one of v, r, N, k_on, k_off, u0");
    } else if (kv.key == "values") {
      has_values = true;
      std::string list = kv.value;
      for (char& c : list)
        if (c == ',') c = ' ';
      std::istringstream in(list);
      std::string token;
      while (in >> token) {
        KeyValue item = kv;
        item.value = token;
        values.push_back(parse_real(item));
      }
      if (values.empty()) fail(kv, "empty value list");
    } else {
      fail(kv, "unknown key");
    }
  }

  void finish(std::string_view origin, std::string_view default_name) {
    const char* required[] = {"D", "v", "k_on", "k_off", "c_p",
                              "dx", "dt", "N", "r", "mode", "u0", "K"};
    for (const char* key : required) {
      if (!seen.count(key))
        throw ParseError(std::string(origin) + ": missing key '" + key + "'");
    }
    if (scenario.name.empty()) scenario.name = std::string(default_name);
    if (scenario.name.empty())
      throw ParseError(std::string(origin) + ": missing key 'name'");
  }
};

ScenarioParser parse_impl(std::string_view text, std::string_view origin,
                          std::string_view default_name, bool sweep) {
  ScenarioParser p;
  p.sweep_allowed = sweep;
  for (const KeyValue& kv : parse_key_values(text, origin)) {
    if (p.handle(kv)) continue;
    if (sweep) p.handle_sweep(kv);
    else fail(kv, "unknown key");
  }
  p.finish(origin, default_name);
  return p;
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string_view origin,
                        std::string_view default_name) {
  return parse_impl(text, origin, default_name, false).scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.string(),
                        path.stem().string());
}

SweepSpec parse_sweep(std::string_view text, std::string_view origin,
                      std::string_view default_name) {
  ScenarioParser p = parse_impl(text, origin, default_name, true);
  if (!p.has_axis)
    throw ParseError(std::string(origin) + ": missing key 'axis'");
  if (!p.has_values)
    throw ParseError(std::string(origin) + ": missing key 'values'");
  SweepSpec spec;
  spec.base = p.scenario;
  spec.axis = p.axis;
  spec.values = p.values;
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path) {
  return parse_sweep(read_text_file(path), path.string(),
                     path.stem().string());
}

const char* axis_key(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kVelocity: return "v";
    case SweepAxis::kReceiver: return "r";
    case SweepAxis::kNumStates: return "N";
    case SweepAxis::kKOn: return "k_on";
    case SweepAxis::kKOff: return "k_off";
    case SweepAxis::kU0: return "u0";
  }
  return "?";
}

Scenario apply_axis(const Scenario& base, SweepAxis axis, double value) {
  Scenario s = base;
  auto as_int = [&](const char* what) {
    if (value != std::floor(value) || std::abs(value) > 2147483647.0)
      throw ParseError(std::string("sweep value ") + std::to_string(value) +
                       " for axis '" + what + "' is not an integer");
    return static_cast<int>(value);
  };
  switch (axis) {
    case SweepAxis::kVelocity: s.config.velocity = value; break;
    case SweepAxis::kReceiver: s.config.receiver = as_int("r"); break;
    case SweepAxis::kNumStates: s.config.num_states = as_int("N"); break;
    case SweepAxis::kKOn: s.config.k_on = value; break;
    case SweepAxis::kKOff: s.config.k_off = value; break;
    case SweepAxis::kU0:
      if (value < 0.0) throw ParseError("sweep value for u0 must be >= 0");
      s.u0 = value;
      break;
  }
  return s;
}

}  // namespace mcchan::cli

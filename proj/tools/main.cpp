#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "mcchan/errors.hpp"

namespace {

using mcchan::cli::CommandOptions;

// Exit codes are stable API: 0 success, 2 validation, 3 I/O, 4 numerical.
int guarded(const char* command, void (*fn)(const std::filesystem::path&,
                                            const CommandOptions&),
            const std::filesystem::path& scenario,
            const CommandOptions& opts) {
  try {
    fn(scenario, opts);
    return 0;
  } catch (const mcchan::IoError& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return 3;
  } catch (const mcchan::SingularSystem& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return 4;
  } catch (const mcchan::Error& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mcchan - discrete-time Markov simulator for microfluidic "
      "molecular-communication channels"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string output_path;
  CommandOptions opts;
  long long particles_flag = -1;
  unsigned long long seed_flag = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_output) {
    cmd->add_option("scenario", scenario_path, "scenario file")->required();
    if (needs_output)
      cmd->add_option("-o,--output", output_path, "output CSV path")
          ->required();
  };

  auto* run = app.add_subcommand(
      "run", "propagate a scenario; writes k,t,z_obs,z_out");
  add_common(run, true);
  run->add_option("--stride", opts.stride,
                  "state-snapshot stride; also writes <output>.states.csv");

  auto* cir = app.add_subcommand(
      "cir", "channel impulse response; writes i,t,g");
  add_common(cir, true);

  auto* equilibrium = app.add_subcommand(
      "equilibrium", "equilibrium gain h^T (I-Q)^-1 b, printed to stdout");
  add_common(equilibrium, false);
  equilibrium->add_option(
      "--tol", opts.tol,
      "additionally print the truncated Neumann cross-check at this tolerance");

  auto* pbs = app.add_subcommand(
      "pbs", "particle-based simulation plus agreement report");
  add_common(pbs, true);
  auto* particles_opt =
      pbs->add_option("--particles", particles_flag, "particle count");
  auto* seed_opt = pbs->add_option("--seed", seed_flag, "PRNG seed");
  pbs->add_option("--stride", opts.stride,
                  "occupancy-snapshot stride; also writes <output>.states.csv");

  auto* sweep = app.add_subcommand(
      "sweep", "run every sweep point; writes per-point CSVs and summary.csv");
  sweep->add_option("sweep", scenario_path, "sweep file")->required();
  sweep->add_option("-o,--output", output_path, "output directory")
      ->required();

  auto* dump = app.add_subcommand(
      "dump", "triplet listing of Q, psi, b, h for inspection");
  dump->add_option("scenario", scenario_path, "scenario file")->required();
  dump->add_option("-o,--output", output_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  opts.output = output_path;
  if (particles_opt->count() > 0) opts.particles = particles_flag;
  if (seed_opt->count() > 0) opts.seed = seed_flag;

  if (run->parsed()) return guarded("run", mcchan::cli::cmd_run, scenario_path, opts);
  if (cir->parsed()) return guarded("cir", mcchan::cli::cmd_cir, scenario_path, opts);
  if (equilibrium->parsed())
    return guarded("equilibrium", mcchan::cli::cmd_equilibrium, scenario_path, opts);
  if (pbs->parsed()) return guarded("pbs", mcchan::cli::cmd_pbs, scenario_path, opts);
  if (dump->parsed()) return guarded("dump", mcchan::cli::cmd_dump, scenario_path, opts);
  if (sweep->parsed()) {
    try {
      mcchan::cli::cmd_sweep(scenario_path, output_path);
      return 0;
    } catch (const mcchan::IoError& e) {
      std::cerr << "sweep: " << e.what() << "\n";
      return 3;
    } catch (const mcchan::SingularSystem& e) {
      std::cerr << "sweep: " << e.what() << "\n";
      return 4;
    } catch (const std::exception& e) {
      std::cerr << "sweep: " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}

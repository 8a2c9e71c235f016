#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <vector>

#include "csv.hpp"
#include "mcchan/errors.hpp"
#include "mcchan/particle_sim.hpp"
#include "mcchan/state_space.hpp"
#include "mcchan/transition_model.hpp"

namespace mcchan::cli {

namespace {

TransitionModel model_for(const Scenario& scenario) {
  const ValidatedConfig cfg = validate_config(scenario.config);
  return build_transition_model(cfg, elementary_probabilities(cfg));
}

Trajectory run_scenario(const TransitionModel& model, const Scenario& scenario,
                        int stride) {
  return scenario.mode == ReleaseMode::kPulse
             ? pulse_response(model, scenario.u0, scenario.steps, stride)
             : continuous_response(model, scenario.u0, scenario.steps, stride);
}

void maybe_write_states(const std::filesystem::path& output,
                        const Trajectory& traj) {
  if (traj.snapshot_stride <= 0) return;
  CsvFile file(output.string() + ".states.csv");
  write_trajectory_states_csv(file.stream(), traj);
  file.close();
}

std::int64_t pbs_particle_count(const Scenario& scenario,
                                const CommandOptions& opts) {
  std::int64_t particles = opts.particles.value_or(scenario.particles);
  if (particles < 0) particles = std::llround(scenario.u0);
  if (particles < 1)
    throw ParseError("particles must be >= 1, got " +
                     std::to_string(particles));
  return particles;
}

}  // namespace

void cmd_run(const std::filesystem::path& scenario_file,
             const CommandOptions& opts) {
  const Scenario scenario = load_scenario(scenario_file);
  const TransitionModel model = model_for(scenario);
  const Trajectory traj = run_scenario(model, scenario, opts.stride);

  CsvFile file(opts.output);
  write_trajectory_csv(file.stream(), traj);
  file.close();
  maybe_write_states(opts.output, traj);
}

void cmd_cir(const std::filesystem::path& scenario_file,
             const CommandOptions& opts) {
  const Scenario scenario = load_scenario(scenario_file);
  const TransitionModel model = model_for(scenario);
  const Cir response = cir(model, scenario.steps);

  CsvFile file(opts.output);
  write_cir_csv(file.stream(), response);
  file.close();
}

void cmd_equilibrium(const std::filesystem::path& scenario_file,
                     const CommandOptions& opts) {
  const Scenario scenario = load_scenario(scenario_file);
  const TransitionModel model = model_for(scenario);
  const double gain = equilibrium_gain(model);
  std::cout << "gain = " << format_sig12(gain) << "\n";
  std::cout << "z_inf = " << format_sig12(gain * scenario.u0) << "\n";
  if (opts.tol > 0.0) {
    const NeumannGain check = neumann_gain(model, opts.tol, 100000000);
    std::cout << "neumann = " << format_sig12(check.value) << "\n";
    if (!check.converged)
      std::cerr << "warning: Neumann summation hit the term cap before the "
                   "stop rule was satisfied\n";
  }
}

void cmd_pbs(const std::filesystem::path& scenario_file,
             const CommandOptions& opts) {
  const Scenario scenario = load_scenario(scenario_file);
  const TransitionModel model = model_for(scenario);
  const std::int64_t particles = pbs_particle_count(scenario, opts);

  PbsRunSpec spec;
  spec.seed = opts.seed.value_or(scenario.seed);
  spec.occupancy_stride = opts.stride;
  spec.schedule.assign(scenario.steps,
                       scenario.mode == ReleaseMode::kPulse ? 0 : particles);
  if (scenario.mode == ReleaseMode::kPulse && scenario.steps > 0)
    spec.schedule[0] = particles;

  const PbsResult result = run_pbs(model, spec);

  std::vector<double> u(spec.schedule.begin(), spec.schedule.end());
  std::vector<double> x0(model.num_states, 0.0);
  const Trajectory traj = propagate(model, x0, u, 0);  // counts only
  const ComparisonReport report = compare_to_model(result, traj);

  CsvFile file(opts.output);
  write_pbs_csv(file.stream(), result, model.dt, particles);
  file.close();
  if (opts.stride > 0) {
    CsvFile states(opts.output.string() + ".states.csv");
    write_pbs_states_csv(states.stream(), result);
    states.close();
  }

  std::cout << "max_residual = " << format_sig12(report.max_abs_residual)
            << "\n";
  std::cout << "within_3sigma = "
            << format_sig12(report.within_3sigma_fraction) << "\n";
  std::cout << "steps = " << report.steps << "\n";
}

void cmd_sweep(const std::filesystem::path& sweep_file,
               const std::filesystem::path& output_dir) {
  const SweepSpec spec = load_sweep(sweep_file);

  // Validate every point before writing anything: a failing point must not
  // leave partial output behind.
  std::vector<Scenario> points;
  points.reserve(spec.values.size());
  for (double value : spec.values) {
    Scenario point = apply_axis(spec.base, spec.axis, value);
    validate_config(point.config);
    points.push_back(std::move(point));
  }

  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec)
    throw IoError("cannot create directory '" + output_dir.string() + "'");

  CsvFile summary(output_dir / "summary.csv");
  summary.stream() << "value,Pe,peak_z,peak_k,equilibrium_gain\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Scenario& point = points[i];
    const TransitionModel model = model_for(point);
    const Trajectory traj = run_scenario(model, point, 0);

    std::ostringstream name;
    name << point.name << "_" << axis_key(spec.axis) << "_";
    name.fill('0');
    name.width(3);
    name << i;
    CsvFile file(output_dir / (name.str() + ".csv"));
    write_trajectory_csv(file.stream(), traj);
    file.close();

    std::int64_t peak_k = 0;
    double peak_z = traj.z_obs.empty() ? 0.0 : traj.z_obs[0];
    for (std::int64_t k = 0; k <= traj.steps; ++k) {
      if (traj.z_obs[k] > peak_z) {
        peak_z = traj.z_obs[k];
        peak_k = k;
      }
    }
    summary.stream() << format_number(spec.values[i]) << ','
                     << format_sig12(peclet_number(point.config)) << ','
                     << format_number(peak_z) << ',' << peak_k << ','
                     << format_sig12(equilibrium_gain(model)) << '\n';
  }
  summary.close();
}

void cmd_dump(const std::filesystem::path& scenario_file,
              const CommandOptions& opts) {
  const Scenario scenario = load_scenario(scenario_file);
  const TransitionModel model = model_for(scenario);
  if (opts.output.empty()) {
    write_model_dump(model, std::cout);
    return;
  }
  CsvFile file(opts.output);
  write_model_dump(model, file.stream());
  file.close();
}

}  // namespace mcchan::cli

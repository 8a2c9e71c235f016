// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion.
//
// Usage: mcchan_acceptance <mcchan-binary> <scenarios-dir> [scratch-dir]

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mcchan/particle_sim.hpp"
#include "mcchan/state_space.hpp"
#include "mcchan/transition_model.hpp"
#include "scenario.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace mcchan;

namespace {

fs::path g_cli;
fs::path g_scenarios;
fs::path g_scratch;

struct Outcome {
  bool pass = false;
  std::string detail;
};

ChannelConfig reference_config(double velocity, int receiver) {
  ChannelConfig cfg;
  cfg.diffusion = 5e-11;
  cfg.velocity = velocity;
  cfg.k_on = 6e8;
  cfg.k_off = 3.0;
  cfg.receptor_conc = 1e-8;
  cfg.dx = 1e-6;
  cfg.dt = 8e-4;
  cfg.num_states = 301;
  cfg.receiver = receiver;
  return cfg;
}

TransitionModel reference_model(double velocity, int receiver = 100) {
  const ValidatedConfig cfg = validate_config(reference_config(velocity, receiver));
  return build_transition_model(cfg, elementary_probabilities(cfg));
}

int run_cli(const std::string& args, std::string* stdout_text = nullptr) {
  static int counter = 0;
  const fs::path out = g_scratch / ("acc-stdout-" + std::to_string(counter++));
  const std::string cmd =
      g_cli.string() + " " + args + " >" + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (stdout_text) {
    std::ifstream in(out);
    std::ostringstream buf;
    buf << in.rdbuf();
    *stdout_text = buf.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

// 1. Every column of the assembled full transition structure sums to one
//    within 1e-12, over 1000 randomized valid configs.
Outcome stochasticity() {
  testing::ConfigSampler sampler(101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ValidatedConfig cfg = validate_config(sampler.next());
    const TransitionModel m =
        build_transition_model(cfg, elementary_probabilities(cfg));
    const auto sums = m.column_sums();
    for (int j = 0; j < m.num_states; ++j)
      worst = std::max(worst, std::abs(sums[j] + m.flow_out[j] - 1.0));
  }
  return {worst <= 1e-12,
          "max column-sum deviation " + fmt(worst) + " (limit 1e-12)"};
}

// 2. Mass conservation under random nonnegative inputs, K = 1000, within
//    1e-9 relative at every step.
Outcome mass_conservation() {
  testing::ConfigSampler sampler(202);
  std::uniform_real_distribution<double> amount(0.0, 1e4);
  double worst = 0.0;
  for (int rep = 0; rep < 30; ++rep) {
    const ValidatedConfig cfg = validate_config(sampler.next());
    const TransitionModel m =
        build_transition_model(cfg, elementary_probabilities(cfg));
    std::vector<double> u(1000);
    for (double& v : u) v = amount(sampler.rng());
    const std::vector<double> x0(m.num_states, 0.0);
    const Trajectory traj = propagate(m, x0, u);
    double injected = 0.0;
    for (std::int64_t k = 0; k <= traj.steps; ++k) {
      const double live = traj.total_mass[k] + traj.z_out[k];
      const double rel =
          std::abs(live - injected) / std::max(1.0, injected);
      worst = std::max(worst, rel);
      if (k < traj.steps) injected += u[k];
    }
  }
  return {worst <= 1e-9,
          "max relative mass defect " + fmt(worst) + " (limit 1e-9)"};
}

// 3. Iterative CIR equals dense matrix powers for N <= 6, i <= 50, within
//    1e-14 absolute.
Outcome small_instance_oracle() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int n : {4, 5, 6}) {
    for (int rep = 0; rep < 50; ++rep) {
      ElementaryProbabilities ep;
      ep.p_diff = 0.3 * unit(rng);
      ep.p_flow = 0.3 * unit(rng);
      ep.p_bind = 0.3 * unit(rng);
      ep.p_unbind = unit(rng);
      const int r = 2 + static_cast<int>(unit(rng) * (n - 3));
      const TransitionModel m = assemble_transition_model(n, r, ep);
      const Cir fast = cir(m, 50);
      const auto oracle = testing::dense_cir(m, 50);
      for (int i = 0; i <= 50; ++i)
        worst = std::max(worst, std::abs(fast.g[i] - oracle[i]));
    }
  }
  return {worst <= 1e-14,
          "max |g_iter - g_dense| = " + fmt(worst) + " (limit 1e-14)"};
}

// 4. Truncated Neumann summation agrees with the direct (I-Q) solve within
//    1e-8 relative on the reference config at both velocities.
Outcome equilibrium_consistency() {
  double worst = 0.0;
  for (double v : {1e-5, 6e-5}) {
    const TransitionModel m = reference_model(v);
    const double direct = equilibrium_gain(m);
    const NeumannGain series = neumann_gain(m, 1e-13, 20000000);
    if (!series.converged)
      return {false, "Neumann summation did not satisfy its stop rule"};
    worst = std::max(worst, std::abs(series.value - direct) / direct);
  }
  return {worst <= 1e-8,
          "max relative gap " + fmt(worst) + " (limit 1e-8)"};
}

// 5. The 2x2 system has equilibrium gain 15/7 within 1e-12.
Outcome analytic_toy_gain() {
  const double gain = equilibrium_gain(testing::toy_two_state());
  const double err = std::abs(gain - 15.0 / 7.0) / (15.0 / 7.0);
  return {err <= 1e-12, "relative error " + fmt(err) + " (limit 1e-12)"};
}

// 6. The sweep summary reproduces Pe = 60 and Pe = 360 exactly.
Outcome peclet_reproduction() {
  const fs::path out_dir = g_scratch / "acc-sweep";
  const int code = run_cli("sweep " +
                           (g_scenarios / "sweep_velocity.swp").string() +
                           " -o " + out_dir.string());
  if (code != 0) return {false, "sweep exited " + std::to_string(code)};
  std::ifstream in(out_dir / "summary.csv");
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> pe;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    pe.push_back(std::stod(cell));
  }
  const bool ok = pe.size() == 2 && pe[0] == 60.0 && pe[1] == 360.0;
  std::string detail = "Pe = {";
  for (std::size_t i = 0; i < pe.size(); ++i)
    detail += (i ? "," : "") + fmt(pe[i], 17);
  detail += "} expected exactly {60,360}";
  return {ok, detail};
}

// 7. Flow and distance trend orderings of the transient peak and the
//    equilibrium gain.
Outcome trend_orderings() {
  struct Curve {
    std::int64_t peak_k = 0;
    double peak_g = 0.0;
    double gain = 0.0;
  };
  auto curve = [](double v, int r) {
    const TransitionModel m = reference_model(v, r);
    const Cir response = cir(m, 60000);
    Curve c;
    for (std::int64_t i = 0; i <= 60000; ++i) {
      if (response.g[i] > c.peak_g) {
        c.peak_g = response.g[i];
        c.peak_k = i;
      }
    }
    c.gain = equilibrium_gain(m);
    return c;
  };
  const Curve slow100 = curve(1e-5, 100), fast100 = curve(6e-5, 100);
  const Curve slow200 = curve(1e-5, 200), fast200 = curve(6e-5, 200);

  std::string detail;
  bool ok = true;
  auto expect = [&](bool cond, const std::string& name) {
    if (!cond) {
      ok = false;
      detail += name + " violated; ";
    }
  };
  expect(fast100.peak_k < slow100.peak_k, "earlier peak (r=100)");
  expect(fast200.peak_k < slow200.peak_k, "earlier peak (r=200)");
  expect(fast100.peak_g > slow100.peak_g, "larger peak (r=100)");
  expect(fast200.peak_g > slow200.peak_g, "larger peak (r=200)");
  expect(fast100.gain < slow100.gain, "smaller gain (r=100)");
  expect(fast200.gain < slow200.gain, "smaller gain (r=200)");
  expect(slow200.peak_k > slow100.peak_k, "later peak with distance (v=10)");
  expect(fast200.peak_k > fast100.peak_k, "later peak with distance (v=60)");
  expect(slow200.peak_g < slow100.peak_g, "lower peak with distance (v=10)");
  expect(fast200.peak_g < fast100.peak_g, "lower peak with distance (v=60)");
  if (ok)
    detail = "all ten orderings strict (peaks " +
             std::to_string(fast100.peak_k) + "<" +
             std::to_string(slow100.peak_k) + ", gains " + fmt(fast100.gain) +
             "<" + fmt(slow100.gain) + ")";
  return {ok, detail};
}

// 8. PBS pulse with 1e5 particles: at least 95% of steps within 3 binomial
//    sigma of the analytic response; the same run must reject a model with
//    doubled binding probability.
Outcome pbs_agreement() {
  const TransitionModel m = reference_model(1e-5, 100);
  const std::int64_t K = 15000;
  const std::int64_t particles = 100000;

  PbsRunSpec spec;
  spec.schedule.assign(K, 0);
  spec.schedule[0] = particles;
  spec.seed = 20260808;
  const PbsResult run = run_pbs(m, spec);
  const Trajectory traj =
      pulse_response(m, static_cast<double>(particles), K, 0);
  const ComparisonReport report = compare_to_model(run, traj);

  ElementaryProbabilities doubled{0.04, 2 * 4.8e-3, 2.4e-3, 8e-3};
  const TransitionModel wrong =
      assemble_transition_model(301, 100, doubled, 8e-4);
  const Trajectory wrong_traj =
      pulse_response(wrong, static_cast<double>(particles), K, 0);
  const ComparisonReport control = compare_to_model(run, wrong_traj);

  const bool ok = report.within_3sigma_fraction >= 0.95 &&
                  control.within_3sigma_fraction < 0.95;
  return {ok, "within-3sigma fraction " + fmt(report.within_3sigma_fraction) +
                  " (needs >= 0.95); doubled-binding control " +
                  fmt(control.within_3sigma_fraction) + " (needs < 0.95)"};
}

// 9. Power-iteration estimate of rho(Q) stays below one on every shipped
//    scenario.
Outcome spectral_radius_bound() {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(g_scenarios))
    if (entry.path().extension() == ".scn") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) return {false, "no shipped scenarios found"};

  double worst = 0.0;
  for (const fs::path& file : files) {
    const cli::Scenario scenario = cli::load_scenario(file);
    const ValidatedConfig valid = validate_config(scenario.config);
    const TransitionModel m =
        build_transition_model(valid, elementary_probabilities(valid));
    const SpectralRadiusEstimate est = spectral_radius_estimate(m, 300000, 1e-12);
    if (!(est.value < 1.0))
      return {false, file.filename().string() + " gives rho estimate " +
                         fmt(est.value, 12)};
    worst = std::max(worst, est.value);
  }
  return {true, std::to_string(files.size()) +
                    " scenarios, largest estimate " + fmt(worst, 12) + " < 1"};
}

// 10. cmd_pbs is deterministic: identical seed and config give byte-identical
//     CSV output.
Outcome pbs_determinism() {
  const fs::path scn = g_scenarios / "pulse_pe360_d100.scn";
  const fs::path a = g_scratch / "acc-det-a.csv";
  const fs::path b = g_scratch / "acc-det-b.csv";
  const std::string args = " --particles 20000 --seed 7777";
  int code = run_cli("pbs " + scn.string() + " -o " + a.string() + args);
  if (code != 0) return {false, "first run exited " + std::to_string(code)};
  code = run_cli("pbs " + scn.string() + " -o " + b.string() + args);
  if (code != 0) return {false, "second run exited " + std::to_string(code)};
  const std::string first = read_file(a), second = read_file(b);
  if (first.empty()) return {false, "empty CSV output"};
  return {first == second,
          first == second ? "byte-identical CSVs" : "outputs differ"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: mcchan_acceptance <mcchan-binary> <scenarios-dir> "
                 "[scratch-dir]\n";
    return 2;
  }
  g_cli = argv[1];
  g_scenarios = argv[2];
  g_scratch = argc > 3 ? fs::path(argv[3])
                       : fs::temp_directory_path() / "mcchan-acceptance";
  fs::create_directories(g_scratch);

  struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds, 0 = none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "stochasticity", 5.0, stochasticity},
      {2, "mass conservation", 10.0, mass_conservation},
      {3, "small-instance CIR oracle", 0.0, small_instance_oracle},
      {4, "equilibrium consistency", 30.0, equilibrium_consistency},
      {5, "analytic toy gain", 0.0, analytic_toy_gain},
      {6, "Peclet reproduction", 0.0, peclet_reproduction},
      {7, "trend orderings", 60.0, trend_orderings},
      {8, "PBS agreement", 300.0, pbs_agreement},
      {9, "spectral radius bound", 0.0, spectral_radius_bound},
      {10, "PBS determinism", 0.0, pbs_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.time_limit > 0.0 && seconds > criterion.time_limit) {
      outcome.pass = false;
      outcome.detail += " [exceeded " + fmt(criterion.time_limit) +
                        " s time limit]";
    }
    std::ostringstream line;
    line << (outcome.pass ? "[PASS] " : "[FAIL] ") << criterion.id << " "
         << criterion.name << ": " << outcome.detail << " (" << fmt(seconds)
         << " s)";
    std::cout << line.str() << "\n";
    failures += !outcome.pass;
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 10 criteria passed\n";
  return 0;
}

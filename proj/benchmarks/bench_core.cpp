#include <benchmark/benchmark.h>

#include <vector>

#include "mcchan/particle_sim.hpp"
#include "mcchan/state_space.hpp"
#include "mcchan/transition_model.hpp"

namespace {

using namespace mcchan;

TransitionModel reference_model(int num_states) {
  ChannelConfig cfg;
  cfg.diffusion = 5e-11;
  cfg.velocity = 1e-5;
  cfg.k_on = 6e8;
  cfg.k_off = 3.0;
  cfg.receptor_conc = 1e-8;
  cfg.dx = 1e-6;
  cfg.dt = 8e-4;
  cfg.num_states = num_states;
  cfg.receiver = num_states / 3;
  const ValidatedConfig valid = validate_config(cfg);
  return build_transition_model(valid, elementary_probabilities(valid));
}

void BM_Assemble(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ElementaryProbabilities ep{0.04, 4.8e-3, 2.4e-3, 8e-3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_transition_model(n, n / 3, ep));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Assemble)->Range(64, 1 << 17)->Complexity(benchmark::oN);

void BM_Propagate(benchmark::State& state) {
  const TransitionModel model = reference_model(301);
  const std::vector<double> u(state.range(0), 1e3);
  const std::vector<double> x0(model.num_states, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(model, x0, u, /*snapshot_stride=*/0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Propagate)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_Cir(benchmark::State& state) {
  const TransitionModel model = reference_model(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cir(model, 10000));
  }
}
BENCHMARK(BM_Cir)->Arg(301)->Arg(3001);

void BM_EquilibriumGain(benchmark::State& state) {
  const TransitionModel model = reference_model(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(equilibrium_gain(model));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EquilibriumGain)->Range(256, 1 << 17)->Complexity(benchmark::oN);

void BM_SpectralRadius(benchmark::State& state) {
  const TransitionModel model = reference_model(301);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_radius_estimate(model, 100000, 1e-10));
  }
}
BENCHMARK(BM_SpectralRadius);

void BM_RunPbs(benchmark::State& state) {
  const TransitionModel model = reference_model(301);
  PbsRunSpec spec;
  spec.schedule.assign(1000, 0);
  spec.schedule[0] = state.range(0);
  spec.seed = 99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pbs(model, spec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1000);
}
BENCHMARK(BM_RunPbs)->Arg(1000)->Arg(10000)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();

#include "mcchan/particle_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "mcchan/random.hpp"

namespace mcchan {

TransitionSampler::TransitionSampler(const TransitionModel& model)
    : n_(model.num_states) {
  const int n = n_;
  const int r0 = model.receiver - 1;
  rows_.resize(n);
  for (int j = 0; j < n; ++j) {
    Row& row = rows_[j];
    double cum = 0.0;
    auto push = [&](double p, int target) {
      if (p <= 0.0) return;
      cum += p;
      row.threshold[row.count] = cum;
      row.target[row.count] = target;
      ++row.count;
    };
    push(model.diag[j], j);                      // stay
    if (j > 0) push(model.sup[j - 1], j - 1);    // upstream
    if (j + 1 < n) push(model.sub[j], j + 1);    // downstream
    if (j == r0) push(model.bind, n - 1);        // bind
    if (j == n - 1 && r0 >= 0) push(model.unbind, r0);  // unbind
    push(model.flow_out[j], n);                  // flow out, never returns

    if (row.count == 0 || std::abs(cum - 1.0) > 1e-9) {
      throw std::invalid_argument(
          "column " + std::to_string(j + 1) +
          " of the transition structure sums to " + std::to_string(cum) +
          ", expected 1");
    }
    // Close the last interval exactly so a draw of 1-eps cannot fall through.
    row.threshold[row.count - 1] = 1.0;
  }
}

namespace {

struct PartitionCounts {
  std::vector<std::int64_t> bound;     // per step
  std::vector<std::int64_t> out_step;  // flow-out events per step
  std::vector<std::vector<std::int64_t>> occupancy;
};

// Walk one particle from `first_step` (already in `state` at that step)
// through step K, accumulating per-step counts.
void walk_particle(const TransitionSampler& sampler, int state,
                   std::int64_t first_step, std::int64_t K, int stride,
                   Xoshiro256& rng, PartitionCounts& counts) {
  const int bound_state = sampler.flow_out_index() - 1;
  const int flow_out = sampler.flow_out_index();
  if (state == bound_state) ++counts.bound[first_step];
  if (stride > 0 && first_step % stride == 0)
    ++counts.occupancy[first_step / stride][state];
  for (std::int64_t k = first_step + 1; k <= K; ++k) {
    state = sampler.sample(state, rng.uniform());
    if (state == flow_out) {
      ++counts.out_step[k];
      return;
    }
    if (state == bound_state) ++counts.bound[k];
    if (stride > 0 && k % stride == 0) ++counts.occupancy[k / stride][state];
  }
}

// Deterministic share of `total` for partition p of `parts`.
std::int64_t partition_share(std::int64_t total, int parts, int p) {
  return total / parts + (p < static_cast<int>(total % parts) ? 1 : 0);
}

}  // namespace

PbsResult run_pbs(const TransitionModel& model, const PbsRunSpec& spec) {
  const int n = model.num_states;
  if (!spec.initial.empty() && static_cast<int>(spec.initial.size()) != n)
    throw DimensionMismatch("initial occupancy length does not match model");
  if (spec.partitions < 1)
    throw std::invalid_argument("partitions must be >= 1");
  for (std::int64_t c : spec.schedule)
    if (c < 0) throw std::invalid_argument("schedule entries must be >= 0");
  for (std::int64_t c : spec.initial)
    if (c < 0) throw std::invalid_argument("initial occupancy must be >= 0");

  const TransitionSampler sampler(model);
  const std::int64_t K = static_cast<std::int64_t>(spec.schedule.size());
  const int parts = spec.partitions;
  const int stride = spec.occupancy_stride;
  const std::int64_t num_snapshots = stride > 0 ? K / stride + 1 : 0;

  std::vector<PartitionCounts> local(parts);
  auto run_partition = [&](int p) {
    PartitionCounts& counts = local[p];
    counts.bound.assign(K + 1, 0);
    counts.out_step.assign(K + 1, 0);
    if (stride > 0)
      counts.occupancy.assign(num_snapshots, std::vector<std::int64_t>(n, 0));
    Xoshiro256 rng(spec.seed, static_cast<std::uint64_t>(p));

    if (!spec.initial.empty()) {
      for (int s = 0; s < n; ++s) {
        const std::int64_t count = partition_share(spec.initial[s], parts, p);
        for (std::int64_t i = 0; i < count; ++i)
          walk_particle(sampler, s, 0, K, stride, rng, counts);
      }
    }
    for (std::int64_t k0 = 0; k0 < K; ++k0) {
      const std::int64_t count = partition_share(spec.schedule[k0], parts, p);
      // A release at step k0 first shows up in the state at step k0 + 1,
      // matching x[k] = Q x[k-1] + b u[k-1].
      for (std::int64_t i = 0; i < count; ++i)
        walk_particle(sampler, 0, k0 + 1, K, stride, rng, counts);
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (parts == 1 || hw == 1) {
    for (int p = 0; p < parts; ++p) run_partition(p);
  } else {
    std::vector<std::thread> workers;
    const int per_wave = static_cast<int>(std::min<unsigned>(hw, parts));
    for (int base = 0; base < parts; base += per_wave) {
      const int end = std::min(parts, base + per_wave);
      for (int p = base; p < end; ++p)
        workers.emplace_back(run_partition, p);
      for (auto& t : workers) t.join();
      workers.clear();
    }
  }

  PbsResult result;
  result.seed = spec.seed;
  result.partitions = parts;
  result.occupancy_stride = stride;
  result.bound_count.assign(K + 1, 0);
  result.out_count.assign(K + 1, 0);
  result.released.assign(K + 1, 0);
  if (stride > 0) {
    result.occupancy.assign(num_snapshots, std::vector<std::int64_t>(n, 0));
    for (std::int64_t s = 0; s < num_snapshots; ++s)
      result.occupancy_steps.push_back(s * stride);
  }
  for (const PartitionCounts& counts : local) {
    for (std::int64_t k = 0; k <= K; ++k) {
      result.bound_count[k] += counts.bound[k];
      result.out_count[k] += counts.out_step[k];
    }
    for (std::int64_t s = 0; s < num_snapshots; ++s)
      for (int i = 0; i < n; ++i)
        result.occupancy[s][i] += counts.occupancy[s][i];
  }
  // out_count is cumulative.
  for (std::int64_t k = 1; k <= K; ++k)
    result.out_count[k] += result.out_count[k - 1];

  std::int64_t injected = 0;
  for (std::int64_t c : spec.initial) injected += c;
  result.released[0] = injected;
  result.total_particles = injected;
  for (std::int64_t k = 1; k <= K; ++k) {
    result.released[k] = result.released[k - 1] + spec.schedule[k - 1];
  }
  result.total_particles = result.released[K];
  return result;
}

ComparisonReport compare_to_model(const PbsResult& result,
                                  const Trajectory& trajectory) {
  const std::size_t steps = result.bound_count.size();
  if (trajectory.z_obs.size() != steps)
    throw ScheduleMismatch("particle run and trajectory have different step counts");

  ComparisonReport report;
  report.steps = static_cast<std::int64_t>(steps);
  report.residuals.reserve(steps);
  std::int64_t within = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double total = static_cast<double>(result.released[k]);
    const double injected_model = trajectory.total_mass[k] + trajectory.z_out[k];
    if (std::abs(injected_model - total) > 0.5)
      throw ScheduleMismatch("injected mass differs between run and trajectory at step " +
                             std::to_string(k));
    const double expected = trajectory.z_obs[k];
    const double share = total > 0.0 ? expected / total : 0.0;
    // Clamp: a grossly wrong expectation (share > 1) must yield a huge
    // residual, not a NaN from a negative variance.
    const double variance = std::max(expected * (1.0 - share), 0.0) + 1e-12;
    const double residual =
        (static_cast<double>(result.bound_count[k]) - expected) /
        std::sqrt(variance);
    report.residuals.push_back(residual);
    report.max_abs_residual =
        std::max(report.max_abs_residual, std::abs(residual));
    if (std::abs(residual) <= 3.0) ++within;
  }
  report.within_3sigma_fraction =
      steps > 0 ? static_cast<double>(within) / static_cast<double>(steps) : 1.0;
  return report;
}

}  // namespace mcchan

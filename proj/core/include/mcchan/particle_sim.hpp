#pragma once

#include <cstdint>
#include <vector>

#include "mcchan/state_space.hpp"
#include "mcchan/transition_model.hpp"

namespace mcchan {

/// Particle-based run description. The walk realizes the same chain as the
/// analytical model, one particle at a time, and serves as its statistical
/// oracle.
struct PbsRunSpec {
  std::vector<std::int64_t> schedule;  // releases per step; K = schedule.size()
  std::vector<std::int64_t> initial;   // optional initial occupancy, length N
  std::uint64_t seed = 1;
  int partitions = 4;        // deterministic for a fixed partition count
  int occupancy_stride = 0;  // 0 = no occupancy snapshots
};

/// Empirical per-step counts. All integer arithmetic; conservation is exact.
struct PbsResult {
  std::vector<std::int64_t> bound_count;  // particles in s_N at step k
  std::vector<std::int64_t> out_count;    // cumulative flowed-out at step k
  std::vector<std::int64_t> released;     // initial + sum_{j<k} schedule[j]

  int occupancy_stride = 0;
  std::vector<std::int64_t> occupancy_steps;
  std::vector<std::vector<std::int64_t>> occupancy;  // per snapshot, length N

  std::uint64_t seed = 0;
  int partitions = 0;
  std::int64_t total_particles = 0;
};

/// Per-step agreement between a particle run and the analytical trajectory.
/// Residuals are standardized by the binomial deviation
/// sqrt(expected (1 - expected/total) + 1e-12).
struct ComparisonReport {
  std::vector<double> residuals;
  double max_abs_residual = 0.0;
  double within_3sigma_fraction = 0.0;
  std::int64_t steps = 0;
};

/// Categorical one-step sampler over a column of the full transition
/// structure. Outcomes are laid out in a fixed order - stay, upstream,
/// downstream, bind/unbind, flow-out - so runs are reproducible across
/// platforms. sample() maps a state and one uniform draw to the next state;
/// flow-out is reported as index num_states.
class TransitionSampler {
 public:
  explicit TransitionSampler(const TransitionModel& model);

  int flow_out_index() const { return n_; }
  int sample(int state, double uniform_draw) const {
    const Row& row = rows_[state];
    for (int i = 0; i < row.count - 1; ++i) {
      if (uniform_draw < row.threshold[i]) return row.target[i];
    }
    return row.target[row.count - 1];
  }

 private:
  struct Row {
    double threshold[5];
    int target[5];
    int count = 0;
  };
  std::vector<Row> rows_;
  int n_ = 0;
};

/// Runs the particle simulation. Deterministic given (seed, spec): particles
/// are split deterministically across partitions, each partition draws from
/// its own substream, and the reduction is order-independent integer
/// addition. Partitions run on up to hardware_concurrency threads.
///
/// Requires a conforming model (every column of Q plus psi sums to 1 within
/// 1e-9); throws DimensionMismatch or std::invalid_argument otherwise.
PbsResult run_pbs(const TransitionModel& model, const PbsRunSpec& spec);

/// Standardized per-step residuals of a particle run against an analytical
/// trajectory computed under the same schedule. Throws ScheduleMismatch when
/// step counts or injected mass disagree.
ComparisonReport compare_to_model(const PbsResult& result,
                                  const Trajectory& trajectory);

}  // namespace mcchan

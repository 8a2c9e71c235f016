#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mcchan/transition_model.hpp"

namespace mcchan {

/// Time series produced by propagating the state recurrence
///   x[k] = Q x[k-1] + b u[k-1],  z_obs[k] = h^T x[k],
///   z_out[k] = z_out[k-1] + psi^T x[k-1].
///
/// z_obs, z_out, total_mass and t are recorded at every step; full state
/// snapshots are kept only every `snapshot_stride` steps (0 = none) to bound
/// memory on long runs.
struct Trajectory {
  std::int64_t steps = 0;         // K; sequences below have K+1 entries
  std::vector<double> t;          // k dt (all zero when the model carries no dt)
  std::vector<double> z_obs;      // receiver observation per step
  std::vector<double> z_out;      // cumulative flow-out per step
  std::vector<double> total_mass; // sum of x[k] per step

  int snapshot_stride = 0;
  std::vector<std::int64_t> snapshot_steps;
  std::vector<std::vector<double>> snapshots;
};

/// Channel impulse response g[i] = h^T Q^i b, i = 0..K.
struct Cir {
  std::vector<double> g;
  double dt = 0.0;
};

/// Propagates the recurrence for K = u.size() steps from initial state x0.
/// Computed with iterated sparse matrix-vector products; dense powers are
/// never formed. Snapshots default to every step; pass a larger stride (or 0
/// for none) to bound memory on long runs. Throws DimensionMismatch when x0
/// does not match the model.
Trajectory propagate(const TransitionModel& model, std::span<const double> x0,
                     std::span<const double> u, int snapshot_stride = 1);

/// CIR up to step K via the iterated products w <- Q w starting from w = b.
Cir cir(const TransitionModel& model, std::int64_t K);

/// Response to the pulse u = {u0, 0, 0, ...}: z_obs[k] = g[k-1] u0 for k >= 1
/// and z_obs[0] = h^T x0 = 0.
Trajectory pulse_response(const TransitionModel& model, double u0,
                          std::int64_t K, int snapshot_stride = 1);

/// Response to the constant release u[k] = u0: z_obs[k] = (sum_{i<k} g[i]) u0.
Trajectory continuous_response(const TransitionModel& model, double u0,
                               std::int64_t K, int snapshot_stride = 1);

/// Equilibrium gain h^T (I - Q)^{-1} b via a direct solve of (I - Q) y = b.
///
/// The system is tridiagonal in the stored order except for the two
/// receiver/bound couplings sitting in the last row and column, so it is
/// solved as a bordered tridiagonal system: two Thomas sweeps on the leading
/// block plus a scalar elimination of the bound state. Throws SingularSystem
/// when a pivot vanishes (rho(Q) = 1, e.g. all probabilities zero or
/// p_unbind = 0).
double equilibrium_gain(const TransitionModel& model);

/// Truncated Neumann summation of the CIR, the slow independent route to the
/// equilibrium gain. Stops once the increment g[i] stays below
/// tol * (partial sum) for 100 consecutive terms, which guards against
/// stopping before the diffusive wave has reached the receiver.
struct NeumannGain {
  double value = 0.0;
  bool converged = false;
  std::int64_t terms = 0;
};
NeumannGain neumann_gain(const TransitionModel& model, double tol,
                         std::int64_t max_terms);

}  // namespace mcchan

#include "mcchan/state_space.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace mcchan {

namespace {

// Pivots below this magnitude are treated as structural zeros of (I - Q).
// Legitimate configs produce pivots on the order of the elementary
// probabilities; exact cancellation happens only in the rho(Q) = 1 cases.
constexpr double kSingularPivot = 1e-300;

void record_step(const TransitionModel& model, const std::vector<double>& x,
                 std::int64_t k, double z_out, Trajectory& traj) {
  traj.t.push_back(static_cast<double>(k) * model.dt);
  traj.z_obs.push_back(model.observe(x));
  traj.z_out.push_back(z_out);
  traj.total_mass.push_back(std::accumulate(x.begin(), x.end(), 0.0));
  if (traj.snapshot_stride > 0 && k % traj.snapshot_stride == 0) {
    traj.snapshot_steps.push_back(k);
    traj.snapshots.push_back(x);
  }
}

}  // namespace

Trajectory propagate(const TransitionModel& model, std::span<const double> x0,
                     std::span<const double> u, int snapshot_stride) {
  const int n = model.num_states;
  if (static_cast<int>(x0.size()) != n) {
    throw DimensionMismatch("x0 has length " + std::to_string(x0.size()) +
                            ", model has " + std::to_string(n) + " states");
  }
  const std::int64_t K = static_cast<std::int64_t>(u.size());

  Trajectory traj;
  traj.steps = K;
  traj.snapshot_stride = snapshot_stride;
  traj.t.reserve(K + 1);
  traj.z_obs.reserve(K + 1);
  traj.z_out.reserve(K + 1);
  traj.total_mass.reserve(K + 1);

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> next(n, 0.0);
  double z_out = 0.0;
  record_step(model, x, 0, z_out, traj);

  for (std::int64_t k = 1; k <= K; ++k) {
    z_out += model.outflow(x);
    model.apply(x, next);
    const double input = u[k - 1];
    if (input != 0.0) {
      for (int i = 0; i < n; ++i) next[i] += model.input_coupling[i] * input;
    }
    x.swap(next);
    record_step(model, x, k, z_out, traj);
  }
  return traj;
}

Cir cir(const TransitionModel& model, std::int64_t K) {
  const int n = model.num_states;
  Cir out;
  out.dt = model.dt;
  out.g.reserve(K + 1);

  std::vector<double> w = model.input_coupling;
  std::vector<double> next(n, 0.0);
  out.g.push_back(model.observe(w));
  for (std::int64_t i = 1; i <= K; ++i) {
    model.apply(w, next);
    w.swap(next);
    out.g.push_back(model.observe(w));
  }
  return out;
}

Trajectory pulse_response(const TransitionModel& model, double u0,
                          std::int64_t K, int snapshot_stride) {
  std::vector<double> u(K, 0.0);
  if (K > 0) u[0] = u0;
  std::vector<double> x0(model.num_states, 0.0);
  return propagate(model, x0, u, snapshot_stride);
}

Trajectory continuous_response(const TransitionModel& model, double u0,
                               std::int64_t K, int snapshot_stride) {
  std::vector<double> u(K, u0);
  std::vector<double> x0(model.num_states, 0.0);
  return propagate(model, x0, u, snapshot_stride);
}

double equilibrium_gain(const TransitionModel& model) {
  const int n = model.num_states;
  if (n <= 0) throw DimensionMismatch("model has no states");
  const int m = n - 1;  // leading block size
  const int r0 = model.receiver - 1;
  if (m == 0) {
    const double corner = 1.0 - model.diag[0];
    if (std::abs(corner) < kSingularPivot)
      throw SingularSystem("(I - Q) is singular");
    return model.observation[0] * model.input_coupling[0] / corner;
  }

  // A = I - Q, split as [T u; v^T d] with the bound state last. T is
  // tridiagonal; the couplings live in u (column n-1) and v (row n-1).
  std::vector<double> lower(m, 0.0), diag(m, 0.0), upper(m, 0.0);
  for (int i = 0; i < m; ++i) diag[i] = 1.0 - model.diag[i];
  for (int i = 0; i + 1 < m; ++i) {
    lower[i + 1] = -model.sub[i];
    upper[i] = -model.sup[i];
  }
  std::vector<double> u_col(m, 0.0), v_row(m, 0.0);
  if (m >= 1) {
    u_col[m - 1] -= model.sup[m - 1];
    v_row[m - 1] -= model.sub[m - 1];
  }
  if ((model.bind != 0.0 || model.unbind != 0.0) && r0 >= 0 && r0 < m) {
    u_col[r0] -= model.unbind;
    v_row[r0] -= model.bind;
  }
  const double corner = 1.0 - model.diag[n - 1];

  // Thomas elimination on T for two right-hand sides: b_head and u_col.
  std::vector<double> z(model.input_coupling.begin(),
                        model.input_coupling.begin() + m);
  std::vector<double> w(u_col);
  std::vector<double> c_prime(m, 0.0);
  double pivot = diag[0];
  if (std::abs(pivot) < kSingularPivot)
    throw SingularSystem("(I - Q) pivot vanished at state 1");
  c_prime[0] = upper[0] / pivot;
  z[0] /= pivot;
  w[0] /= pivot;
  for (int i = 1; i < m; ++i) {
    pivot = diag[i] - lower[i] * c_prime[i - 1];
    if (std::abs(pivot) < kSingularPivot)
      throw SingularSystem("(I - Q) pivot vanished at state " +
                           std::to_string(i + 1));
    if (i + 1 < m) c_prime[i] = upper[i] / pivot;
    z[i] = (z[i] - lower[i] * z[i - 1]) / pivot;
    w[i] = (w[i] - lower[i] * w[i - 1]) / pivot;
  }
  for (int i = m - 2; i >= 0; --i) {
    z[i] -= c_prime[i] * z[i + 1];
    w[i] -= c_prime[i] * w[i + 1];
  }

  double vz = 0.0, vw = 0.0;
  for (int i = 0; i < m; ++i) {
    vz += v_row[i] * z[i];
    vw += v_row[i] * w[i];
  }
  const double denom = corner - vw;
  if (std::abs(denom) < kSingularPivot)
    throw SingularSystem("(I - Q) is singular at the bound state");
  const double y_last = (model.input_coupling[n - 1] - vz) / denom;

  double gain = model.observation[n - 1] * y_last;
  for (int i = 0; i < m; ++i) {
    gain += model.observation[i] * (z[i] - w[i] * y_last);
  }
  return gain;
}

NeumannGain neumann_gain(const TransitionModel& model, double tol,
                         std::int64_t max_terms) {
  const int n = model.num_states;
  std::vector<double> w = model.input_coupling;
  std::vector<double> next(n, 0.0);

  NeumannGain out;
  out.value = model.observe(w);
  out.terms = 1;
  int small_streak = 0;
  for (std::int64_t i = 1; i < max_terms; ++i) {
    model.apply(w, next);
    w.swap(next);
    const double g = model.observe(w);
    out.value += g;
    out.terms = i + 1;
    if (g <= tol * out.value) {
      if (++small_streak >= 100) {
        out.converged = true;
        return out;
      }
    } else {
      small_streak = 0;
    }
  }
  return out;
}

}  // namespace mcchan

#include "mcchan/transition_model.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

namespace mcchan {

void TransitionModel::apply(std::span<const double> x,
                            std::span<double> y) const {
  const int n = num_states;
  for (int i = 0; i < n; ++i) y[i] = diag[i] * x[i];
  for (int i = 0; i + 1 < n; ++i) {
    y[i + 1] += sub[i] * x[i];
    y[i] += sup[i] * x[i + 1];
  }
  if ((bind != 0.0 || unbind != 0.0) && receiver >= 1) {
    const int r0 = receiver - 1;
    y[n - 1] += bind * x[r0];
    y[r0] += unbind * x[n - 1];
  }
}

double TransitionModel::observe(std::span<const double> x) const {
  double s = 0.0;
  for (int i = 0; i < num_states; ++i) s += observation[i] * x[i];
  return s;
}

double TransitionModel::outflow(std::span<const double> x) const {
  double s = 0.0;
  for (int i = 0; i < num_states; ++i) s += flow_out[i] * x[i];
  return s;
}

std::vector<double> TransitionModel::column_sums() const {
  const int n = num_states;
  std::vector<double> sums(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double s = diag[j];
    if (j + 1 < n) s += sub[j];  // entry below the diagonal, column j
    if (j > 0) s += sup[j - 1];  // entry above the diagonal, column j
    sums[j] = s;
  }
  if ((bind != 0.0 || unbind != 0.0) && receiver >= 1) {
    sums[receiver - 1] += bind;
    sums[n - 1] += unbind;
  }
  return sums;
}

std::vector<Triplet> TransitionModel::q_triplets() const {
  const int n = num_states;
  const int r0 = receiver - 1;
  std::vector<Triplet> t;
  t.reserve(3 * n);
  for (int j = 0; j < n; ++j) {
    if (j > 0 && sup[j - 1] != 0.0) t.push_back({j - 1, j, sup[j - 1]});
    if (diag[j] != 0.0) t.push_back({j, j, diag[j]});
    if (j + 1 < n && sub[j] != 0.0) t.push_back({j + 1, j, sub[j]});
    if (j == r0 && bind != 0.0) t.push_back({n - 1, j, bind});
    if (j == n - 1 && unbind != 0.0 && r0 >= 0) t.push_back({r0, j, unbind});
  }
  return t;
}

int TransitionModel::nonzero_count() const {
  return static_cast<int>(q_triplets().size());
}

TransitionModel assemble_transition_model(int num_states, int receiver,
                                          const ElementaryProbabilities& ep,
                                          double dt) {
  const int n = num_states;
  TransitionModel m;
  m.num_states = n;
  m.receiver = receiver;
  m.dt = dt;
  m.diag.assign(n, 0.0);
  m.sub.assign(n - 1, 0.0);
  m.sup.assign(n - 1, 0.0);
  m.flow_out.assign(n, 0.0);
  m.input_coupling.assign(n, 0.0);
  m.observation.assign(n, 0.0);

  const double down = ep.p_diff + ep.p_flow;  // advection never points upstream
  const double up = ep.p_diff;
  const int r0 = receiver - 1;
  const int last_free = n - 2;  // 0-based index of s_{N-1}

  for (int i = 0; i < last_free; ++i) m.sub[i] = down;
  for (int i = 1; i <= last_free; ++i) m.sup[i - 1] = up;
  // sub[last_free] / sup[last_free] stay zero: the bound state is coupled to
  // the chain only through (r, N), not through storage adjacency.

  m.diag[0] = 1.0 - down;
  for (int i = 1; i <= last_free; ++i) m.diag[i] = 1.0 - down - up;
  m.diag[r0] = 1.0 - down - up - ep.p_bind;
  m.diag[n - 1] = 1.0 - ep.p_unbind;

  m.bind = ep.p_bind;
  m.unbind = ep.p_unbind;
  m.flow_out[last_free] = down;  // the only leak; exits never return

  m.input_coupling[0] = 1.0;  // transmitter releases into s1
  m.observation[n - 1] = 1.0;  // bound molecules are what the receiver reads
  return m;
}

TransitionModel build_transition_model(const ValidatedConfig& cfg,
                                       const ElementaryProbabilities& ep) {
  return assemble_transition_model(cfg->num_states, cfg->receiver, ep,
                                   cfg->dt);
}

SpectralRadiusEstimate spectral_radius_estimate(const TransitionModel& model,
                                                int max_iterations,
                                                double tol) {
  const int n = model.num_states;
  std::vector<double> w(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> qw(n, 0.0);

  SpectralRadiusEstimate est;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= max_iterations; ++it) {
    model.apply(w, qw);
    double numerator = 0.0;
    double w_norm2 = 0.0;
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      numerator += w[i] * qw[i];
      w_norm2 += w[i] * w[i];
      norm2 += qw[i] * qw[i];
    }
    // Explicit quotient: a fixed point of Q (e.g. the identity chain) yields
    // exactly 1 regardless of normalization rounding.
    const double rayleigh = numerator / w_norm2;
    est.value = rayleigh;
    est.iterations = it;
    if (it > 1 && std::abs(rayleigh - previous) < tol) {
      est.converged = true;
      return est;
    }
    previous = rayleigh;
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) {  // Q annihilated the iterate; spectrum seen is 0
      est.value = 0.0;
      est.converged = true;
      return est;
    }
    for (int i = 0; i < n; ++i) w[i] = qw[i] / norm;
  }
  est.converged = false;
  return est;
}

namespace {

void put_value(std::ostream& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.write(buf, res.ptr - buf);
}

void put_vector(std::ostream& out, const char* name,
                const std::vector<double>& v) {
  int nnz = 0;
  for (double x : v) nnz += (x != 0.0);
  out << name << " " << v.size() << " " << nnz << "\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    out << (i + 1) << " ";
    put_value(out, v[i]);
    out << "\n";
  }
}

}  // namespace

void write_model_dump(const TransitionModel& model, std::ostream& out) {
  const auto triplets = model.q_triplets();
  out << "Q " << model.num_states << " " << model.num_states << " "
      << triplets.size() << "\n";
  for (const Triplet& t : triplets) {
    out << (t.row + 1) << " " << (t.col + 1) << " ";
    put_value(out, t.value);
    out << "\n";
  }
  put_vector(out, "psi", model.flow_out);
  put_vector(out, "b", model.input_coupling);
  put_vector(out, "h", model.observation);
  out << "r " << model.receiver << "\n";
}

}  // namespace mcchan

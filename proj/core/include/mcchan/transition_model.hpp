#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "mcchan/channel_config.hpp"

namespace mcchan {

/// One nonzero matrix entry, 0-based indices.
struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Transient-state transition model of the channel chain.
///
/// States are stored 0-based: indices 0..n-2 are the free spatial states
/// s1..s_{N-1} in flow order, index n-1 is the bound state s_N. The matrix
/// Q is tridiagonal among the stored positions plus two entries coupling the
/// receiver free state and the bound state:
///
///   Q[i][i]     = diag[i]
///   Q[i+1][i]   = sub[i]      hop toward the outlet
///   Q[i][i+1]   = sup[i]      hop toward the transmitter
///   Q[n-1][r0]  += bind       capture,  r0 = receiver - 1
///   Q[r0][n-1]  += unbind     release
///
/// The absorbing flow-out state is never stored as a matrix row/column; it is
/// represented solely by the per-column exit probabilities `flow_out` and the
/// cumulative accounting done during propagation. For a model produced by
/// build_transition_model(), each column of Q plus its flow_out entry sums to
/// one up to floating-point rounding.
struct TransitionModel {
  int num_states = 0;  // N
  int receiver = 0;    // r, 1-based; 0 when not meaningful (hand-built models)
  double dt = 0.0;     // physical step, carried for time axes; 0 if unknown

  std::vector<double> diag;  // size N
  std::vector<double> sub;   // size N-1
  std::vector<double> sup;   // size N-1
  double bind = 0.0;         // Q[s_N, s_r]
  double unbind = 0.0;       // Q[s_r, s_N]

  std::vector<double> flow_out;        // psi, size N
  std::vector<double> input_coupling;  // b, size N
  std::vector<double> observation;     // h, size N

  /// y = Q x. Aliasing x and y is not allowed.
  void apply(std::span<const double> x, std::span<double> y) const;

  /// h^T x.
  double observe(std::span<const double> x) const;

  /// psi^T x, the mass leaving through the outlet in one step.
  double outflow(std::span<const double> x) const;

  /// Column sums of Q alone (flow_out not included).
  std::vector<double> column_sums() const;

  /// Nonzero entries of Q, column-major order.
  std::vector<Triplet> q_triplets() const;

  /// Count of structurally stored nonzeros in Q.
  int nonzero_count() const;
};

/// Assembles the chain for given state count, receiver index and elementary
/// probabilities. No physical validation; entries are laid down exactly as
/// the complement rules prescribe:
///
///   downstream hop   p(i+1, i) = p_diff + p_flow      free i
///   upstream hop     p(i-1, i) = p_diff               free i >= 2
///   outlet exit      psi(N-1)  = p_diff + p_flow      no return
///   capture/release  p(N, r) = p_bind, p(r, N) = p_unbind
///   self             column complement; p(1,1) = 1 - p(2,1),
///                    p(N,N) = 1 - p_unbind
///
/// b = e_1 (transmitter at s1), h = e_N (bound state observed).
TransitionModel assemble_transition_model(int num_states, int receiver,
                                          const ElementaryProbabilities& ep,
                                          double dt = 0.0);

/// assemble_transition_model() for a validated config.
TransitionModel build_transition_model(const ValidatedConfig& cfg,
                                       const ElementaryProbabilities& ep);

/// Result of power iteration on Q. `converged` is false when the iteration
/// budget ran out before successive Rayleigh quotients settled; the best
/// estimate is still returned, never silently dropped.
struct SpectralRadiusEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Estimates the spectral radius of Q by power iteration from a uniform
/// positive start vector. Convergence: successive Rayleigh-quotient
/// estimates differ by less than `tol`.
SpectralRadiusEstimate spectral_radius_estimate(const TransitionModel& model,
                                                int max_iterations,
                                                double tol);

/// Serializes Q, psi, b, h as a text triplet listing (1-based indices) for
/// inspection and golden-file tests.
void write_model_dump(const TransitionModel& model, std::ostream& out);

}  // namespace mcchan

#pragma once

#include <string>
#include <vector>

namespace nlt {

/// W_{k+1} = C^k W_k^beta, the extremal case of W_{k+1} <= C^k W_k^beta.
struct RecurrenceParams {
  double C = 2.0;
  double beta = 2.0;
  double W0 = 0.25;
  int k_max = 64;

  /// Throws std::invalid_argument for C <= 1, beta <= 1, W0 < 0 or k_max < 1.
  void validate() const;
};

/// C^{-1/(beta-1)^2}; rejects C <= 1 or beta <= 1.
double threshold(double C, double beta);

struct IterateResult {
  std::vector<double> W;  ///< W_0 .. W_{k_max}, or up to the last finite term
  bool diverged = false;  ///< a term overflowed
  int k_overflow = -1;
  int k_at_underflow = -1;  ///< first k whose term underflowed and was set to 0
};

IterateResult iterate(const RecurrenceParams& p);

enum class Convergence { converged, diverged, undecided };

std::string to_string(Convergence c);

struct ConvergenceReport {
  Convergence status = Convergence::undecided;
  /// Bound on every W_k with k >= k_max when converged (may be 0 after underflow).
  double tail_bound = 0.0;
  int k_at_underflow = -1;
  /// log(W_0 / threshold); its sign decides the extremal sequence.
  double log_ratio = 0.0;
};

/// Decides lim W_k = 0 for the extremal sequence. With a = log C / (beta - 1),
/// y_k = log W_k + k a + a / (beta - 1) obeys y_{k+1} = beta y_k exactly, so the
/// sequence tends to 0 iff y_0 < 0 and diverges iff y_0 > 0. W_0 within
/// boundary_tolerance (relative) of the threshold is undecided.
ConvergenceReport converges(const RecurrenceParams& p, double boundary_tolerance = 1e-12);

struct SweepRow {
  double C = 0.0;
  double beta = 0.0;
  double W0 = 0.0;
  Convergence status = Convergence::undecided;
  int k_at_underflow = -1;
};

/// C_i = 10^{i/steps}, beta_j = 4^{j/steps} for i, j = 1..steps, each with
/// W0 = fraction * threshold(C_i, beta_j) for every fraction.
std::vector<SweepRow> sweep(int steps, const std::vector<double>& fractions, int k_max = 64);

/// The ten fractions of the threshold used by default sweeps.
std::vector<double> default_fractions();

}  // namespace nlt

#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlt/field.hpp"
#include "nlt/monitors.hpp"
#include "nlt/solver.hpp"

namespace nlt {

/// Outcome of one check, the unit reported by the command line tools.
struct Verdict {
  std::string name;
  bool passed = false;
  double worst = 0.0;      ///< worst observed value of the checked quantity
  double tolerance = 0.0;  ///< the bound it was compared against
  std::string detail;
};

/// Pointwise max(theta - level, 0).
PhysicalField truncate(const PhysicalField& theta, double level);

/// De Giorgi level C_k = 1 - 2^{-k}.
double degiorgi_level(int k);

/// dy/dt at every sample from the parabola through three neighbouring
/// points: centred in the interior, one-sided second order at the ends.
/// Requires at least three strictly increasing times.
std::vector<double> time_derivative(std::span<const double> t, std::span<const double> y);

/// True when consecutive spacings agree to 1e-6 relative.
bool uniform_cadence(std::span<const double> t);

struct MassDissipation {
  std::vector<double> t;
  std::vector<double> residual;  ///< d/dt mass + hdot_alpha_sq
  std::vector<double> relative;  ///< |residual| / max(hdot_alpha_sq, tiny)
  double max_relative = 0.0;
  bool strictly_decreasing = true;  ///< mass over the same records
  std::vector<std::string> warnings;
  Verdict verdict(double tolerance) const;
};

/// d/dt int theta + ||theta||^2_{Hdot^alpha} = 0 along a gradient-velocity run.
/// Only records with tail_fraction < tail_window are used. Throws
/// std::invalid_argument for other velocity types or fewer than three records.
MassDissipation check_mass_dissipation(std::span<const DiagnosticsRecord> series, VelocityType velocity,
                                       double tail_window = std::numeric_limits<double>::infinity());

struct ExtremaMonotonicity {
  /// Largest excess of M(t_j) - M(t_i) over rate * ||theta_0||_inf * (t_j - t_i),
  /// i < j, divided by ||theta_0||_inf; <= 0 when the bound holds.
  double max_increase = 0.0;
  /// Same for the decrease of m.
  double min_decrease = 0.0;
  double worst_time = 0.0;
  Verdict verdict() const;
};

/// M non-increasing and m non-decreasing up to rate * ||theta_0||_inf per unit time.
ExtremaMonotonicity check_extrema(std::span<const DiagnosticsRecord> series, double theta0_sup, double rate = 1e-6);

struct LevelDissipation {
  int k = 0;
  std::vector<double> t;
  std::vector<double> mass;           ///< ||theta_k||_{L1}
  std::vector<double> hdot_alpha_sq;  ///< ||theta_k||^2_{Hdot^alpha}
  std::vector<double> violation;      ///< d/dt mass + hdot - slack, <= 0 required
  double worst = -std::numeric_limits<double>::infinity();
  Verdict verdict() const;
};

/// d/dt ||theta_k||_{L1} <= -||theta_k||^2_{Hdot^alpha} + 1e-3 max(||theta_k||^2_{Hdot^alpha}, tiny)
/// with theta_k = (theta - C_k)^+.
LevelDissipation check_level_dissipation(std::span<const Snapshot> snapshots, int k, double alpha);

struct TruncationChain {
  double worst_ratio = 0.0;  ///< max ||theta_{k+1}||_1 / (2^{k+1} ||theta_k||_2^2)
  int worst_k = 0;
  double worst_time = 0.0;
  Verdict verdict() const;
};

/// ||theta_{k+1}||_{L1} <= 2^{k+1} ||theta_k||^2_{L2} at every snapshot, 0 <= k < k_max.
TruncationChain check_truncation_chain(std::span<const Snapshot> snapshots, int k_max);

struct DeGiorgiState {
  int k = 0;
  double level = 0.0;  ///< C_k
  double t = 0.0;      ///< t_k
  double mass = 0.0;   ///< W_k
  /// ||theta_{k-1}(t_k)||^2_{Hdot^alpha} and its admissibility bound W_{k-1}/(C_k - t_{k-1});
  /// zero for k = 0.
  double hdot_alpha_sq = 0.0;
  double admissible_bound = 0.0;
  /// C_{n,alpha} 2^{((2n+2 alpha)/(n+2 alpha))(k-1)} W_{k-1}^{(n+4 alpha)/(n+2 alpha)}; zero for k = 0.
  double recurrence_bound = 0.0;
  bool recurrence_holds = true;
};

struct DeGiorgiResult {
  std::vector<DeGiorgiState> states;
  bool success = false;       ///< every level up to k_max was constructed
  int failed_level = -1;      ///< k + 1 for which no admissible time existed
  std::string message;
  bool recurrence_holds() const;
  bool strictly_decreasing() const;
  Verdict verdict() const;
};

/// Builds t_0 = 0 < t_1 < ... < t_{k_max} from snapshots on [0, 1]: t_{k+1} is
/// the earliest snapshot in (t_k, C_{k+1}) with
/// ||theta_k(t)||^2_{Hdot^alpha} <= W_k / (C_{k+1} - t_k). When every candidate
/// has the same value (a degenerate, e.g. identically zero, solution) the
/// snapshot nearest the middle of the interval is taken.
DeGiorgiResult degiorgi_sequence(std::span<const Snapshot> snapshots, double alpha, int k_max);

/// ||f||_2 / (||f||_1^{2 alpha/(n+2 alpha)} ||f||_{Hdot^alpha}^{n/(n+2 alpha)}).
/// Throws std::invalid_argument for an identically zero field.
double check_interpolation(const PhysicalField& f, double alpha);

/// (||theta_0^+||_1 / (eps0 T^{n/(2 alpha)}))^{2 alpha/(n+2 alpha)}.
double decay_bound(double theta0_positive_mass, double t, int n, double alpha);

/// decay_bound - M(T) for the record's time T > 0.
double check_decay_bound(const DiagnosticsRecord& record, double theta0_positive_mass, const ModelParams& p, int n);

struct DecayBoundCheck {
  double min_margin = std::numeric_limits<double>::infinity();
  double worst_time = 0.0;
  std::size_t records_checked = 0;
  Verdict verdict() const;
};

/// check_decay_bound over every record with t > 0 and tail_fraction below tail_window.
DecayBoundCheck check_decay_bound_series(std::span<const DiagnosticsRecord> series, double theta0_positive_mass,
                                         const ModelParams& p, int n, double tail_window = 1e-4);

struct ScalingPair {
  double max_deviation = 0.0;  ///< max |c theta_A(lambda x, mu t) - theta_B(x, t)| / ||theta_0||_inf
  std::vector<double> times;   ///< comparison times of run B
  StopReport stop_a;
  StopReport stop_b;
};

/// Runs theta_0 on its box (A) and c theta_0(lambda x), c = lambda^{-2 alpha} mu,
/// on the box L/lambda (B) at the same N, so sample j of B sits at lambda times
/// sample j of A. A is compared at mu t against B at t for every t in
/// compare_times (times of run B). Run B uses the controls of A with all
/// times divided by mu. lambda must be a positive integer dividing N.
ScalingPair scaling_pair_test(const PhysicalField& theta0, const ModelParams& p, int lambda, double mu,
                              const RunControls& controls_a, std::span<const double> compare_times);

/// Trapezoid integral of criterion_integrand over the records with t <= t_max,
/// closing with the linearly interpolated value at t_max.
double criterion_integral(std::span<const DiagnosticsRecord> series,
                          double t_max = std::numeric_limits<double>::infinity());

}  // namespace nlt

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlt/field.hpp"
#include "nlt/monitors.hpp"

namespace nlt {

/// gradient: u = grad Lambda^{-2+2 alpha} theta. perp: u = grad^perp Lambda^{-2+2 alpha} theta
/// (n = 2). none: u = 0, leaving pure dissipation.
enum class VelocityType { gradient, perp, none };

std::string to_string(VelocityType v);
VelocityType parse_velocity_type(const std::string& text);

/// theta_t + u . grad theta + kappa Lambda^gamma theta = 0.
struct ModelParams {
  double alpha = 0.5;
  double kappa = 0.0;
  double gamma = 1.0;  ///< ignored when kappa = 0
  VelocityType velocity = VelocityType::gradient;

  /// Throws std::invalid_argument naming the offending field.
  void validate(int dimension) const;
};

/// The advective term -dealias(F[u . grad theta]) with the by-products the
/// stepper and the monitors need.
struct NonlinearTerm {
  SpectralField value;
  SpectralVector velocity_hat;  ///< velocity spectra of the dealiased state
  PhysicalField theta;          ///< samples of the dealiased state
  double max_speed = 0.0;
  double grad_inf = 0.0;
  /// Energy share of F[u . grad theta] outside the 2/3 band, before dealiasing.
  double tail_fraction = 0.0;
  bool finite = true;
};

NonlinearTerm evaluate_nonlinear(const SpectralField& theta_hat, const ModelParams& p);

/// -dealias(F[u . grad theta]).
SpectralField rhs(const SpectralField& theta_hat, const ModelParams& p);

struct SolverState {
  double t = 0.0;
  SpectralField theta_hat;
  double dt = 0.0;
  std::size_t step_count = 0;
};

/// Lagrangian marker carried by the velocity.
struct Tracer {
  Point position{};
  double theta_initial = 0.0;
};

/// Moves tracers over one step. stage_velocity holds the velocity spectra of
/// the three stage states, at t, t + dt and t + dt/2, and positions follow the
/// same SSP-RK3 combination as the field. Positions end wrapped into [0, L).
void advance_tracers(std::span<Tracer> tracers, const std::array<SpectralVector, 3>& stage_velocity, double dt);

struct StepResult {
  bool finite = true;
  /// Velocity spectra at the three stages, for advance_tracers.
  std::optional<std::array<SpectralVector, 3>> stage_velocity;
};

/// One integrating-factor SSP-RK3 step of size state.dt: the advective part
/// by Shu-Osher RK3, the dissipative part exactly through
/// exp(-kappa (2 pi |k| / L)^gamma tau). first is the nonlinear term at the
/// current state if already known. On a non-finite stage the state is left
/// untouched and finite = false.
StepResult step(SolverState& state, const ModelParams& p, const NonlinearTerm* first = nullptr,
                bool keep_stage_velocity = false);

inline constexpr double kSpeedFloor = 1e-12;

/// c_cfl (L/N) / max(max_speed, 1e-12), capped at dt_max.
double cfl_dt(const Grid& grid, double max_speed, double c_cfl, double dt_max);

enum class StopReason { reached_T, gradient_threshold, resolution_loss, nan_detected };

std::string to_string(StopReason r);

struct StopReport {
  StopReason reason = StopReason::reached_T;
  double t_stop = 0.0;
  DiagnosticsRecord final_diagnostics;
};

struct Snapshot {
  double t = 0.0;
  PhysicalField field;
};

struct TracerSample {
  double t = 0.0;
  std::vector<Point> positions;
  std::vector<double> values;  ///< interpolated theta at the positions
};

struct RunControls {
  double t_end = 10.0;
  double c_cfl = 0.4;
  double dt_max = 1e-2;
  double grad_factor = 1e3;       ///< stop when grad_inf exceeds this times its initial value
  double tail_threshold = 1e-4;   ///< stop when tail_fraction exceeds this
  double record_interval = 1e-2;  ///< series cadence; records at i * interval
  std::vector<double> snapshot_times;
  bool keep_snapshots = true;
  /// Receives every snapshot as it is taken (may be empty).
  std::function<void(const Snapshot&)> snapshot_sink;
  std::vector<Point> tracer_seeds;
  std::size_t max_steps = 10'000'000;
};

struct RunResult {
  StopReport report;
  std::vector<DiagnosticsRecord> series;
  std::vector<Snapshot> snapshots;
  std::vector<TracerSample> tracer_series;
  std::vector<double> dt_history;
  std::size_t steps = 0;
};

/// Integrates from the dealiased initial field until t_end or a stop trigger.
/// Records are taken on the cadence grid, snapshots at the requested times;
/// steps are shortened to land on both exactly.
RunResult run(const PhysicalField& initial, const ModelParams& p, const RunControls& controls);

}  // namespace nlt

#pragma once

#include <string>
#include <vector>

#include "nlt/config.hpp"
#include "nlt/diagnostics.hpp"
#include "nlt/solver.hpp"

namespace nlt {

/// Value of NLT_OUTPUT_ROOT, or empty.
std::string output_root();
/// path under root when path is relative and root is non-empty.
std::string resolve_path(const std::string& path, const std::string& root);

struct RunOutcome {
  RunResult result;
  std::string series_path;
  std::string snapshot_dir;
  std::string echo_path;
  std::vector<Verdict> verdicts;  ///< the config's post-hoc checks
};

/// Simulates a config: writes the series, one NLTS file per snapshot, the
/// tracer table when tracers are seeded, and the config echo next to the
/// series as <stem>.echo.ini. Runs the config's checks afterwards.
RunOutcome execute_run(const RunConfig& config, const std::string& root);

/// Tracer seeds of a config, with the refined initial maximum appended when
/// at_maximum is set.
std::vector<Point> tracer_seeds(const RunConfig& config, const PhysicalField& initial);

/// Runs the named checks on a series and snapshot set. theta0 data comes from
/// the first record (t = 0).
std::vector<Verdict> run_checks(const CheckSettings& settings, const std::vector<DiagnosticsRecord>& series,
                                const std::vector<Snapshot>& snapshots, const ModelParams& model, int dimension);

/// Spectral identities and kernel-versus-Fourier agreement on one grid.
std::vector<Verdict> operators_selftest(int dimension, int resolution, double length, std::uint64_t seed = 7);

struct ScanRow {
  double alpha = 0.0;
  StopReason reason = StopReason::reached_T;
  double t_stop = 0.0;
  double grad_growth = 0.0;         ///< grad_inf at stop / initial
  double criterion_integral = 0.0;  ///< over [0, t_stop]
};

/// One run per alpha, in parallel, each writing under <snapshot_dir>_alpha<a>
/// and <series stem>_alpha<a>.csv.
std::vector<ScanRow> blowup_scan(const RunConfig& config, const std::vector<double>& alphas, const std::string& root);

}  // namespace nlt

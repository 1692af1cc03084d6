#pragma once

#include <string>
#include <vector>

#include "nlt/grid.hpp"
#include "nlt/initial_data.hpp"
#include "nlt/solver.hpp"

namespace nlt {

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"mass_dissipation", "maximum_principle", "decay_bound",
                                              "level_dissipation", "truncation_chain", "degiorgi",
                                              "interpolation"};
  return names;
}

struct CheckSettings {
  std::vector<std::string> names;
  double mass_tolerance = 1e-4;
  double tail_window = 1e-6;
  double extrema_rate = 1e-6;
  int degiorgi_k_max = 5;
  bool operator==(const CheckSettings&) const = default;
};

/// A complete run description. Text form is INI with sections
/// [grid] [model] [time] [stops] [output] [initial] [checks] [tracers];
/// see README for the key list.
struct RunConfig {
  int n = 2;
  int N = 256;
  double L = 6.283185307179586;
  ModelParams model;
  double t_end = 10.0;
  double c_cfl = 0.4;
  double dt_max = 1e-2;
  double grad_factor = 1e3;
  double tail_threshold = 1e-4;
  std::string series_path = "series.csv";
  double record_interval = 1e-2;
  std::vector<double> snapshot_times;
  double snapshot_cadence = 0.0;  ///< adds i * cadence <= t_end when positive
  std::string snapshot_dir = "snapshots";
  InitialData initial;
  CheckSettings checks;
  std::vector<Point> tracer_seeds;
  bool tracer_at_maximum = false;
  std::string tracer_path = "tracers.csv";

  Grid grid() const { return Grid(n, N, L); }
  /// Explicit snapshot times merged with the cadence, sorted and unique.
  std::vector<double> all_snapshot_times() const;
  /// Solver controls without tracers or sinks.
  RunControls controls() const;
  /// Throws std::invalid_argument naming the offending key.
  void validate() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Strict parse: unknown sections or keys and malformed values are errors.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Every key with its value, floats at 17 significant digits. The result
/// parses back to an equal RunConfig.
std::string echo_config(const RunConfig& config);

/// Shortest text that reads back as v with 17 significant digits.
std::string format_double(double v);
double parse_double(const std::string& text, const std::string& key);

}  // namespace nlt

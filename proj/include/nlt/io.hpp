#pragma once

#include <span>
#include <string>
#include <vector>

#include "nlt/monitors.hpp"
#include "nlt/solver.hpp"

namespace nlt {

inline constexpr const char* kSeriesHeader =
    "t,mass,mass_positive,M,m,hdot_alpha_sq,grad_inf,criterion_integrand,tail_fraction";

/// CSV with kSeriesHeader and one row per record, 17 significant digits.
void write_series(const std::string& path, std::span<const DiagnosticsRecord> records);
std::string series_text(std::span<const DiagnosticsRecord> records);
std::vector<DiagnosticsRecord> read_series(const std::string& path);
std::vector<DiagnosticsRecord> parse_series(const std::string& text);

inline constexpr std::uint32_t kSnapshotVersion = 1;

/// "NLTS", version u32, n u32, N u32, L f64, t f64, N^n f64 samples row-major,
/// all little-endian.
void write_snapshot(const std::string& path, const PhysicalField& field, double t);
Snapshot read_snapshot(const std::string& path);

/// Snapshot files of a directory ordered by their time stamp.
std::vector<Snapshot> read_snapshot_dir(const std::string& dir);
/// snap_000042.nlts
std::string snapshot_filename(std::size_t index);

/// t, then x_j, theta for every tracer (axes up to n).
void write_tracers(const std::string& path, std::span<const TracerSample> samples, int dimension);

}  // namespace nlt

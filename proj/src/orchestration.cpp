#include "nlt/orchestration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "nlt/constants.hpp"
#include "nlt/fft.hpp"
#include "nlt/initial_data.hpp"
#include "nlt/interpolation.hpp"
#include "nlt/io.hpp"
#include "nlt/norms.hpp"
#include "nlt/operators.hpp"
#include "nlt/parallel.hpp"
#include "nlt/quadrature.hpp"

namespace nlt {

namespace fs = std::filesystem;

std::string output_root() {
  const char* v = std::getenv("NLT_OUTPUT_ROOT");
  return v ? std::string(v) : std::string();
}

std::string resolve_path(const std::string& path, const std::string& root) {
  if (root.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(root) / path).string();
}

std::vector<Point> tracer_seeds(const RunConfig& config, const PhysicalField& initial) {
  std::vector<Point> seeds = config.tracer_seeds;
  if (config.tracer_at_maximum) {
    SpectralField spectrum = forward_transform(initial);
    dealias(spectrum);
    seeds.push_back(refined_maximum(spectrum, inverse_transform(spectrum)).location);
  }
  return seeds;
}

namespace {

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

Verdict failed(const std::string& name, const std::string& why) { return {name, false, 0.0, 0.0, why}; }

}  // namespace

RunOutcome execute_run(const RunConfig& config, const std::string& root) {
  config.validate();
  RunOutcome out;
  out.series_path = resolve_path(config.series_path, root);
  out.snapshot_dir = resolve_path(config.snapshot_dir, root);
  ensure_parent(out.series_path);
  fs::create_directories(out.snapshot_dir);
  for (const auto& entry : fs::directory_iterator(out.snapshot_dir))
    if (entry.path().extension() == ".nlts") fs::remove(entry.path());
  const fs::path sp(out.series_path);
  out.echo_path = (sp.parent_path() / (sp.stem().string() + ".echo.ini")).string();
  {
    std::ofstream echo(out.echo_path);
    if (!echo) throw std::runtime_error(out.echo_path + ": cannot open for writing");
    echo << echo_config(config);
  }

  const PhysicalField initial = make_initial(config.grid(), config.initial);
  RunControls controls = config.controls();
  controls.tracer_seeds = tracer_seeds(config, initial);
  std::size_t index = 0;
  const std::string dir = out.snapshot_dir;
  controls.snapshot_sink = [&index, dir](const Snapshot& s) {
    write_snapshot((fs::path(dir) / snapshot_filename(index++)).string(), s.field, s.t);
  };
  out.result = run(initial, config.model, controls);
  write_series(out.series_path, out.result.series);
  if (!controls.tracer_seeds.empty()) {
    const std::string path = resolve_path(config.tracer_path, root);
    ensure_parent(path);
    write_tracers(path, out.result.tracer_series, config.n);
  }
  if (!config.checks.names.empty())
    out.verdicts = run_checks(config.checks, out.result.series, out.result.snapshots, config.model, config.n);
  return out;
}

std::vector<Verdict> run_checks(const CheckSettings& settings, const std::vector<DiagnosticsRecord>& series,
                                const std::vector<Snapshot>& snapshots, const ModelParams& model, int dimension) {
  std::vector<Verdict> verdicts;
  const double theta0_sup = series.empty() ? 0.0 : std::max(std::abs(series[0].maximum), std::abs(series[0].minimum));
  const double mass0_pos = series.empty() ? 0.0 : series[0].mass_positive;
  for (const std::string& name : settings.names) {
    try {
      if (name == "mass_dissipation") {
        verdicts.push_back(check_mass_dissipation(series, model.velocity, settings.tail_window)
                               .verdict(settings.mass_tolerance));
      } else if (name == "maximum_principle") {
        verdicts.push_back(check_extrema(series, theta0_sup, settings.extrema_rate).verdict());
      } else if (name == "decay_bound") {
        verdicts.push_back(
            check_decay_bound_series(series, mass0_pos, model, dimension, settings.tail_window).verdict());
      } else if (name == "level_dissipation") {
        for (int k = 0; k <= settings.degiorgi_k_max; ++k)
          verdicts.push_back(check_level_dissipation(snapshots, k, model.alpha).verdict());
      } else if (name == "truncation_chain") {
        verdicts.push_back(check_truncation_chain(snapshots, settings.degiorgi_k_max).verdict());
      } else if (name == "degiorgi") {
        verdicts.push_back(degiorgi_sequence(snapshots, model.alpha, settings.degiorgi_k_max).verdict());
      } else if (name == "interpolation") {
        const double bound = interpolation_constant(dimension, model.alpha);
        Verdict v{"interpolation", true, 0.0, bound, ""};
        std::size_t used = 0;
        for (const Snapshot& s : snapshots) {
          if (sup_norm(s.field) == 0.0) continue;
          v.worst = std::max(v.worst, check_interpolation(s.field, model.alpha));
          ++used;
        }
        v.passed = v.worst <= bound;
        v.detail = std::to_string(used) + " snapshots";
        verdicts.push_back(v);
      } else {
        verdicts.push_back(failed(name, "unknown check"));
      }
    } catch (const std::exception& e) {
      verdicts.push_back(failed(name, e.what()));
    }
  }
  return verdicts;
}

namespace {

PhysicalField random_smooth_field(const Grid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField spectrum(grid);
  for_each_mode(grid, [&](std::size_t, const Index& k, double) {
    const double decay = std::exp(-0.05 * squared_norm(grid, k));
    spectrum.set_mode(k, Complex(normal(rng), normal(rng)) * decay);
  });
  spectrum.enforce_hermitian();
  dealias(spectrum);
  return inverse_transform(spectrum);
}

double relative_l2(const PhysicalField& a, const PhysicalField& b) {
  const PhysicalField zero(b.grid());
  const double denom = l2_distance(b, zero);
  return denom > 0.0 ? l2_distance(a, b) / denom : l2_distance(a, b);
}

PhysicalField bump(const Grid& grid) {
  InitialData d;
  d.kind = InitialKind::smooth_bump;
  d.radius = grid.length() / 4.0;
  return make_initial(grid, d);
}

}  // namespace

std::vector<Verdict> operators_selftest(int dimension, int resolution, double length, std::uint64_t seed) {
  const Grid grid(dimension, resolution, length);
  std::mt19937_64 rng(seed);
  std::vector<Verdict> out;

  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const PhysicalField f = random_smooth_field(grid, rng);
      worst = std::max(worst, relative_l2(inverse_transform(forward_transform(f)), f));
    }
    out.push_back({"round_trip", worst <= 1e-12, worst, 1e-12, "relative L2"});
  }
  {
    double worst = 0.0;
    for (double alpha : {0.25, 0.5, 0.75}) {
      for (int trial = 0; trial < 5; ++trial) {
        const SpectralField th = forward_transform(random_smooth_field(grid, rng));
        const PhysicalField div = inverse_transform(divergence(velocity_gradient_type(th, alpha)));
        const PhysicalField lap = inverse_transform(fractional_laplacian(th, 2.0 * alpha));
        PhysicalField sum(grid);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = div[i] + lap[i];
        worst = std::max(worst, l2_distance(sum, PhysicalField(grid)) / l2_distance(lap, PhysicalField(grid)));
      }
    }
    out.push_back({"divergence_identity", worst <= 1e-12, worst, 1e-12, "div u + Lambda^{2 alpha} theta"});
  }
  {
    const SpectralField th = forward_transform(random_smooth_field(grid, rng));
    const PhysicalField lap2 = inverse_transform(fractional_laplacian(th, 2.0));
    const SpectralVector g = gradient(th);
    const PhysicalField minus_delta = inverse_transform(divergence(g));
    PhysicalField neg(grid);
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -minus_delta[i];
    const double e1 = relative_l2(neg, lap2);
    const PhysicalField composed =
        inverse_transform(fractional_laplacian(fractional_laplacian(th, 0.3), 0.9));
    const double e2 = relative_l2(composed, inverse_transform(fractional_laplacian(th, 1.2)));
    const double worst = std::max(e1, e2);
    out.push_back({"multiplier_algebra", worst <= 1e-12, worst, 1e-12, "Lambda^2 = -Delta, Lambda^a Lambda^b"});
  }
  if (dimension <= 2) {
    const PhysicalField f = bump(grid);
    SpectralField fh = forward_transform(f);
    double worst_s = 0.0;
    for (double s : {0.5, 1.0, 1.5}) {
      const PhysicalField fourier = inverse_transform(fractional_laplacian(fh, s));
      worst_s = std::max(worst_s, relative_l2(singular_integral_lambda(f, s), fourier));
    }
    out.push_back({"kernel_lambda", worst_s <= 1e-2, worst_s, 1e-2, "singular integral vs Fourier"});
    double worst_u = 0.0;
    for (double alpha : {0.25, 0.5, 0.75}) {
      const SpectralVector u = velocity_gradient_type(fh, alpha);
      const PhysicalVector k = kernel_velocity(f, alpha);
      double num = 0.0, den = 0.0;
      for (int j = 0; j < dimension; ++j) {
        const PhysicalField uj = inverse_transform(u[j]);
        const double d = l2_distance(k[j], uj);
        const double r = l2_distance(uj, PhysicalField(grid));
        num += d * d;
        den += r * r;
      }
      worst_u = std::max(worst_u, std::sqrt(num / den));
    }
    out.push_back({"kernel_velocity", worst_u <= 2e-2, worst_u, 2e-2, "kernel vs Fourier velocity"});
  }
  return out;
}

std::vector<ScanRow> blowup_scan(const RunConfig& config, const std::vector<double>& alphas, const std::string& root) {
  std::vector<ScanRow> rows(alphas.size());
  std::vector<std::exception_ptr> errors(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    try {
      RunConfig c = config;
      c.model.alpha = alphas[i];
      const std::string tag = "_alpha" + format_double(alphas[i]);
      const fs::path series(c.series_path);
      c.series_path = (series.parent_path() / (series.stem().string() + tag + ".csv")).string();
      c.snapshot_dir += tag;
      c.tracer_path = (fs::path(c.tracer_path).parent_path() / (fs::path(c.tracer_path).stem().string() + tag + ".csv")).string();
      const RunOutcome o = execute_run(c, root);
      const auto& s = o.result.series;
      ScanRow r;
      r.alpha = alphas[i];
      r.reason = o.result.report.reason;
      r.t_stop = o.result.report.t_stop;
      const double g0 = s.empty() ? 0.0 : s.front().grad_inf;
      r.grad_growth = g0 > 0.0 ? o.result.report.final_diagnostics.grad_inf / g0 : 0.0;
      r.criterion_integral = criterion_integral(s, r.t_stop);
      rows[i] = r;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

}  // namespace nlt

// Command line front end: run, check, degiorgi, recurrence,
// operators-selftest, blowup-scan.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>

#include "nlt/config.hpp"
#include "nlt/constants.hpp"
#include "nlt/diagnostics.hpp"
#include "nlt/io.hpp"
#include "nlt/orchestration.hpp"
#include "nlt/recurrence.hpp"

using namespace nlt;
using json = nlohmann::json;

namespace {

enum class Format { table, jsonl, both };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fmt(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

bool wants_table(Format f) { return f != Format::jsonl; }
bool wants_json(Format f) { return f != Format::table; }

int report(const std::vector<Verdict>& verdicts, Format f) {
  bool all = true;
  if (wants_table(f)) {
    std::printf("%-24s %-6s %-14s %-14s %s\n", "check", "result", "worst", "tolerance", "detail");
    for (const Verdict& v : verdicts)
      std::printf("%-24s %-6s %-14s %-14s %s\n", v.name.c_str(), v.passed ? "PASS" : "FAIL", fmt(v.worst).c_str(),
                  fmt(v.tolerance).c_str(), v.detail.c_str());
  }
  for (const Verdict& v : verdicts) {
    all = all && v.passed;
    if (wants_json(f))
      std::cout << json{{"check", v.name}, {"passed", v.passed}, {"worst", v.worst}, {"tolerance", v.tolerance},
                        {"detail", v.detail}}
                       .dump()
                << '\n';
  }
  std::cout.flush();
  return all ? 0 : 1;
}

json stop_json(const StopReport& r) {
  return {{"reason", to_string(r.reason)}, {"t_stop", r.t_stop}, {"grad_inf", r.final_diagnostics.grad_inf},
          {"M", r.final_diagnostics.maximum}, {"m", r.final_diagnostics.minimum}};
}

int cmd_run(const std::string& path, Format f) {
  const RunConfig config = load_config(path);
  const RunOutcome o = execute_run(config, output_root());
  const StopReport& r = o.result.report;
  if (wants_table(f)) {
    std::printf("stop        %s at t = %s after %zu steps\n", to_string(r.reason).c_str(), fmt(r.t_stop, 10).c_str(),
                o.result.steps);
    std::printf("series      %s (%zu records)\n", o.series_path.c_str(), o.result.series.size());
    std::printf("snapshots   %s (%zu files)\n", o.snapshot_dir.c_str(), o.result.snapshots.size());
    std::printf("echo        %s\n", o.echo_path.c_str());
  }
  if (wants_json(f)) {
    json j = stop_json(r);
    j["steps"] = o.result.steps;
    j["series"] = o.series_path;
    std::cout << json{{"run", j}}.dump() << '\n';
  }
  return o.verdicts.empty() ? 0 : report(o.verdicts, f);
}

int cmd_check(const std::string& series_path, const std::string& snapshot_dir, const std::string& config_path,
              std::vector<std::string> names, bool all, double alpha, const std::string& velocity, int dimension,
              int k_max, Format f) {
  CheckSettings settings;
  ModelParams model;
  model.alpha = alpha;
  model.velocity = parse_velocity_type(velocity);
  if (!config_path.empty()) {
    const RunConfig c = load_config(config_path);
    settings = c.checks;
    model = c.model;
    dimension = c.n;
  } else {
    settings.degiorgi_k_max = k_max;
  }
  const std::vector<DiagnosticsRecord> series = series_path.empty() ? std::vector<DiagnosticsRecord>{}
                                                                    : read_series(series_path);
  const std::vector<Snapshot> snapshots = snapshot_dir.empty() ? std::vector<Snapshot>{}
                                                               : read_snapshot_dir(snapshot_dir);
  if (!snapshots.empty()) dimension = snapshots.front().field.grid().dimension();
  model.validate(dimension);
  if (all) {
    names.clear();
    for (const std::string& n : known_checks()) {
      const bool needs_snapshots = n == "level_dissipation" || n == "truncation_chain" || n == "degiorgi" ||
                                   n == "interpolation";
      if (n == "mass_dissipation" && model.velocity != VelocityType::gradient) continue;
      if (needs_snapshots ? !snapshots.empty() : !series.empty()) names.push_back(n);
    }
  } else if (names.empty()) {
    names = settings.names;
  }
  if (names.empty()) throw UsageError("check: nothing to check; give --all or --name");
  for (const std::string& n : names)
    if (std::find(known_checks().begin(), known_checks().end(), n) == known_checks().end())
      throw UsageError("check: unknown check '" + n + "'");
  settings.names = names;
  return report(run_checks(settings, series, snapshots, model, dimension), f);
}

int cmd_degiorgi(const std::string& dir, double alpha, int k_max, Format f) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha out of (0,1)");
  const std::vector<Snapshot> snapshots = read_snapshot_dir(dir);
  const DeGiorgiResult r = degiorgi_sequence(snapshots, alpha, k_max);
  if (wants_table(f)) {
    std::printf("%-3s %-10s %-14s %-14s %-14s %s\n", "k", "C_k", "t_k", "W_k", "bound", "result");
    for (const DeGiorgiState& s : r.states)
      std::printf("%-3d %-10s %-14s %-14s %-14s %s\n", s.k, fmt(s.level).c_str(), fmt(s.t).c_str(),
                  fmt(s.mass).c_str(), s.k ? fmt(s.recurrence_bound).c_str() : "-",
                  s.recurrence_holds ? "PASS" : "FAIL");
    std::printf("%s\n", r.message.c_str());
  }
  if (wants_json(f)) {
    for (const DeGiorgiState& s : r.states)
      std::cout << json{{"k", s.k}, {"C_k", s.level}, {"t_k", s.t}, {"W_k", s.mass},
                        {"recurrence_bound", s.recurrence_bound}, {"passed", s.recurrence_holds}}
                       .dump()
                << '\n';
  }
  return report({r.verdict()}, f);
}

int cmd_recurrence(double C, double beta, double W0, int k_max, int grid, Format f) {
  if (grid > 0) {
    const std::vector<SweepRow> rows = sweep(grid, default_fractions(), k_max);
    bool ok = true;
    std::printf("C,beta,W0,converged,k_at_underflow\n");
    for (const SweepRow& r : rows) {
      std::printf("%s,%s,%s,%s,%d\n", format_double(r.C).c_str(), format_double(r.beta).c_str(),
                  format_double(r.W0).c_str(), r.status == Convergence::converged ? "true" : "false",
                  r.k_at_underflow);
      ok = ok && r.status == Convergence::converged;
    }
    return ok ? 0 : 1;
  }
  const RecurrenceParams p{C, beta, W0, k_max};
  p.validate();
  const ConvergenceReport r = converges(p);
  const IterateResult seq = iterate(p);
  if (wants_table(f)) {
    std::printf("threshold   %s\n", fmt(threshold(C, beta), 10).c_str());
    std::printf("status      %s\n", to_string(r.status).c_str());
    std::printf("tail bound  %s\n", fmt(r.tail_bound).c_str());
    std::printf("underflow   %d\n", r.k_at_underflow);
    std::printf("W           ");
    for (std::size_t k = 0; k < std::min<std::size_t>(seq.W.size(), 6); ++k) std::printf("%s ", fmt(seq.W[k]).c_str());
    std::printf("%s\n", seq.diverged ? "... overflow" : "...");
  }
  if (wants_json(f))
    std::cout << json{{"C", C}, {"beta", beta}, {"W0", W0}, {"threshold", threshold(C, beta)},
                      {"status", to_string(r.status)}, {"tail_bound", r.tail_bound},
                      {"k_at_underflow", r.k_at_underflow}, {"overflow", seq.diverged}}
                     .dump()
              << '\n';
  return 0;
}

int cmd_scan(const std::string& path, const std::vector<double>& alphas, Format f) {
  const RunConfig config = load_config(path);
  for (double a : alphas)
    if (!(a > 0.0 && a < 1.0)) throw UsageError("alpha out of (0,1)");
  const std::vector<ScanRow> rows = blowup_scan(config, alphas, output_root());
  if (wants_table(f)) {
    std::printf("%-8s %-20s %-14s %-14s %s\n", "alpha", "stop", "t_stop", "grad growth", "criterion integral");
    for (const ScanRow& r : rows)
      std::printf("%-8s %-20s %-14s %-14s %s\n", fmt(r.alpha).c_str(), to_string(r.reason).c_str(),
                  fmt(r.t_stop).c_str(), fmt(r.grad_growth).c_str(), fmt(r.criterion_integral).c_str());
  }
  if (wants_json(f))
    for (const ScanRow& r : rows)
      std::cout << json{{"alpha", r.alpha}, {"reason", to_string(r.reason)}, {"t_stop", r.t_stop},
                        {"grad_growth", r.grad_growth}, {"criterion_integral", r.criterion_integral}}
                       .dump()
                << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal transport simulator and check harness"};
  app.require_subcommand(1);
  app.fallthrough();
  Format format = Format::both;
  app.add_option("--format", format, "table, jsonl or both")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"table", Format::table}, {"jsonl", Format::jsonl}, {"both", Format::both}}));

  std::string config_path;
  auto* run = app.add_subcommand("run", "simulate a config, write series and snapshots");
  run->add_option("config", config_path, "INI config")->required();

  std::string series_path, snapshot_dir, check_config, velocity = "gradient";
  std::vector<std::string> names;
  bool all = false;
  double alpha = 0.5;
  int dimension = 2, k_max = 5;
  auto* check = app.add_subcommand("check", "run diagnostics on written output");
  check->add_option("series", series_path, "series CSV");
  check->add_option("--snapshots", snapshot_dir, "snapshot directory");
  check->add_option("--config", check_config, "config supplying model and check settings");
  check->add_flag("--all", all, "every check the inputs allow");
  check->add_option("--name", names, "check name (repeatable)");
  check->add_option("--alpha", alpha, "alpha when no config is given");
  check->add_option("--velocity", velocity, "velocity type when no config is given");
  check->add_option("--dimension", dimension, "dimension when no snapshots are given");
  check->add_option("--k-max", k_max, "De Giorgi depth when no config is given");

  std::string dg_dir;
  double dg_alpha = 0.5;
  int dg_k = 5;
  auto* dg = app.add_subcommand("degiorgi", "De Giorgi table from a snapshot directory");
  dg->add_option("snapshot_dir", dg_dir)->required();
  dg->add_option("--alpha", dg_alpha);
  dg->add_option("--k-max", dg_k);

  double C = 2.0, beta = 2.0, W0 = 0.25;
  int rk = 64, grid = 0;
  auto* rec = app.add_subcommand("recurrence", "iterate W_{k+1} = C^k W_k^beta");
  rec->add_option("--C", C);
  rec->add_option("--beta", beta);
  rec->add_option("--W0", W0);
  rec->add_option("--k-max", rk);
  rec->add_option("--grid", grid, "sweep a steps x steps (C, beta) grid below threshold instead");

  int st_n = 2, st_N = 128;
  double st_L = 2.0 * std::numbers::pi;
  auto* st = app.add_subcommand("operators-selftest", "spectral identities and kernel cross-checks");
  st->add_option("--n", st_n);
  st->add_option("--N", st_N);
  st->add_option("--L", st_L);

  std::string scan_config;
  std::vector<double> alphas;
  auto* scan = app.add_subcommand("blowup-scan", "stop time against alpha");
  scan->add_option("config", scan_config)->required();
  scan->add_option("--alphas", alphas)->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(config_path, format);
    if (*check)
      return cmd_check(series_path, snapshot_dir, check_config, names, all, alpha, velocity, dimension, k_max, format);
    if (*dg) return cmd_degiorgi(dg_dir, dg_alpha, dg_k, format);
    if (*rec) return cmd_recurrence(C, beta, W0, rk, grid, format);
    if (*st) return report(operators_selftest(st_n, st_N, st_L), format);
    if (*scan) return cmd_scan(scan_config, alphas, format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

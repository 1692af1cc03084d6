#include "nlt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include "nlt/constants.hpp"
#include "nlt/fft.hpp"
#include "nlt/norms.hpp"

namespace nlt {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

std::string format(const char* label, double value) {
  std::ostringstream s;
  s.precision(6);
  s << label << value;
  return s.str();
}

// Derivative at x of the parabola through (a, ya), (b, yb), (c, yc).
double parabola_slope(double x, double a, double b, double c, double ya, double yb, double yc) {
  return ya * (2.0 * x - b - c) / ((a - b) * (a - c)) + yb * (2.0 * x - a - c) / ((b - a) * (b - c)) +
         yc * (2.0 * x - a - b) / ((c - a) * (c - b));
}

}  // namespace

PhysicalField truncate(const PhysicalField& theta, double level) {
  PhysicalField out(theta.grid());
  for (std::size_t i = 0; i < theta.size(); ++i) out[i] = std::max(theta[i] - level, 0.0);
  return out;
}

double degiorgi_level(int k) { return 1.0 - std::ldexp(1.0, -k); }

std::vector<double> time_derivative(std::span<const double> t, std::span<const double> y) {
  const std::size_t n = t.size();
  if (n < 3 || y.size() != n) throw std::invalid_argument("time_derivative: need at least three samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(t[i] > t[i - 1])) throw std::invalid_argument("time_derivative: times must increase strictly");
  std::vector<double> d(n);
  d[0] = parabola_slope(t[0], t[0], t[1], t[2], y[0], y[1], y[2]);
  for (std::size_t i = 1; i + 1 < n; ++i)
    d[i] = parabola_slope(t[i], t[i - 1], t[i], t[i + 1], y[i - 1], y[i], y[i + 1]);
  d[n - 1] = parabola_slope(t[n - 1], t[n - 3], t[n - 2], t[n - 1], y[n - 3], y[n - 2], y[n - 1]);
  return d;
}

bool uniform_cadence(std::span<const double> t) {
  if (t.size() < 3) return true;
  const double first = t[1] - t[0];
  for (std::size_t i = 2; i < t.size(); ++i)
    if (std::abs((t[i] - t[i - 1]) - first) > 1e-6 * std::abs(first)) return false;
  return true;
}

MassDissipation check_mass_dissipation(std::span<const DiagnosticsRecord> series, VelocityType velocity,
                                       double tail_window) {
  if (velocity != VelocityType::gradient)
    throw std::invalid_argument("mass dissipation applies to gradient velocity only");
  MassDissipation out;
  std::vector<double> mass, hdot;
  for (const DiagnosticsRecord& r : series) {
    if (!(r.tail_fraction < tail_window)) break;
    out.t.push_back(r.t);
    mass.push_back(r.mass);
    hdot.push_back(r.hdot_alpha_sq);
  }
  if (out.t.size() < 3) throw std::invalid_argument("mass dissipation: fewer than three records in the window");
  if (!uniform_cadence(out.t)) out.warnings.push_back("record cadence is not uniform");
  const std::vector<double> slope = time_derivative(out.t, mass);
  for (std::size_t i = 0; i < out.t.size(); ++i) {
    const double res = slope[i] + hdot[i];
    const double rel = std::abs(res) / std::max(hdot[i], kTiny);
    out.residual.push_back(res);
    out.relative.push_back(rel);
    out.max_relative = std::max(out.max_relative, rel);
    if (i > 0 && !(mass[i] < mass[i - 1])) out.strictly_decreasing = false;
  }
  return out;
}

Verdict MassDissipation::verdict(double tolerance) const {
  Verdict v{"mass_dissipation", max_relative <= tolerance && strictly_decreasing, max_relative, tolerance, ""};
  v.detail = std::to_string(t.size()) + " records" + (strictly_decreasing ? "" : ", mass not strictly decreasing");
  for (const auto& w : warnings) v.detail += "; " + w;
  return v;
}

ExtremaMonotonicity check_extrema(std::span<const DiagnosticsRecord> series, double theta0_sup, double rate) {
  ExtremaMonotonicity out;
  if (series.empty()) return out;
  const double scale = theta0_sup > 0.0 ? theta0_sup : 1.0;
  const double slope = rate * scale;
  // M_j - slope t_j must not exceed any earlier M_i - slope t_i; likewise for m.
  double lowest_upper = series[0].maximum - slope * series[0].t;
  double highest_lower = series[0].minimum + slope * series[0].t;
  out.max_increase = -std::numeric_limits<double>::infinity();
  out.min_decrease = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < series.size(); ++j) {
    const DiagnosticsRecord& r = series[j];
    const double up = (r.maximum - slope * r.t - lowest_upper) / scale;
    const double down = (highest_lower - (r.minimum + slope * r.t)) / scale;
    if (up > out.max_increase) out.max_increase = up;
    if (down > out.min_decrease) out.min_decrease = down;
    if (std::max(up, down) >= std::max(out.max_increase, out.min_decrease)) out.worst_time = r.t;
    lowest_upper = std::min(lowest_upper, r.maximum - slope * r.t);
    highest_lower = std::max(highest_lower, r.minimum + slope * r.t);
  }
  if (series.size() == 1) out.max_increase = out.min_decrease = 0.0;
  return out;
}

Verdict ExtremaMonotonicity::verdict() const {
  const double worst = std::max(max_increase, min_decrease);
  Verdict v{"maximum_principle", worst <= 0.0, worst, 0.0, ""};
  v.detail = format("M excess ", max_increase) + format(", m excess ", min_decrease) + format(" at t=", worst_time);
  return v;
}

LevelDissipation check_level_dissipation(std::span<const Snapshot> snapshots, int k, double alpha) {
  LevelDissipation out;
  out.k = k;
  const double level = degiorgi_level(k);
  for (const Snapshot& s : snapshots) {
    const PhysicalField part = truncate(s.field, level);
    out.t.push_back(s.t);
    out.mass.push_back(integral(part));
    out.hdot_alpha_sq.push_back(hdot_squared(forward_transform(part), alpha));
  }
  const std::vector<double> slope = time_derivative(out.t, out.mass);
  for (std::size_t i = 0; i < out.t.size(); ++i) {
    const double slack = 1e-3 * std::max(out.hdot_alpha_sq[i], kTiny);
    const double v = slope[i] + out.hdot_alpha_sq[i] - slack;
    out.violation.push_back(v);
    out.worst = std::max(out.worst, v);
  }
  return out;
}

Verdict LevelDissipation::verdict() const {
  Verdict v{"level_dissipation_k" + std::to_string(k), worst <= 0.0, worst, 0.0, ""};
  v.detail = std::to_string(t.size()) + " snapshots";
  return v;
}

TruncationChain check_truncation_chain(std::span<const Snapshot> snapshots, int k_max) {
  TruncationChain out;
  for (const Snapshot& s : snapshots) {
    for (int k = 0; k < k_max; ++k) {
      const PhysicalField lower = truncate(s.field, degiorgi_level(k));
      const PhysicalField upper = truncate(s.field, degiorgi_level(k + 1));
      const double l2 = norms(lower, 0.5).l2;
      const double lhs = integral(upper);
      const double rhs = std::ldexp(1.0, k + 1) * l2 * l2;
      const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      if (ratio > out.worst_ratio) {
        out.worst_ratio = ratio;
        out.worst_k = k;
        out.worst_time = s.t;
      }
    }
  }
  return out;
}

Verdict TruncationChain::verdict() const {
  Verdict v{"truncation_chain", worst_ratio <= 1.0, worst_ratio, 1.0, ""};
  v.detail = "worst at k=" + std::to_string(worst_k) + format(", t=", worst_time);
  return v;
}

bool DeGiorgiResult::recurrence_holds() const {
  return std::all_of(states.begin(), states.end(), [](const DeGiorgiState& s) { return s.recurrence_holds; });
}

bool DeGiorgiResult::strictly_decreasing() const {
  for (std::size_t i = 1; i < states.size(); ++i)
    if (!(states[i].mass < states[i - 1].mass)) return false;
  return true;
}

Verdict DeGiorgiResult::verdict() const {
  Verdict v{"degiorgi", success && recurrence_holds(), 0.0, 0.0, message};
  if (!states.empty()) {
    v.worst = states.back().mass;
    v.tolerance = states.front().mass;
  }
  return v;
}

DeGiorgiResult degiorgi_sequence(std::span<const Snapshot> snapshots, double alpha, int k_max) {
  DeGiorgiResult out;
  if (snapshots.empty() || std::abs(snapshots.front().t) > 1e-12) {
    out.message = "no snapshot at t = 0";
    out.failed_level = 0;
    return out;
  }
  const int n = snapshots.front().field.grid().dimension();
  const double c_interp = interpolation_constant(n, alpha);
  const double growth = (2.0 * n + 2.0 * alpha) / (n + 2.0 * alpha);
  const double power = (n + 4.0 * alpha) / (n + 2.0 * alpha);

  DeGiorgiState s0;
  s0.k = 0;
  s0.level = 0.0;
  s0.t = 0.0;
  s0.mass = integral(truncate(snapshots.front().field, 0.0));
  out.states.push_back(s0);

  for (int k = 0; k < k_max; ++k) {
    const DeGiorgiState& cur = out.states.back();
    const double upper = degiorgi_level(k + 1);
    const double bound = cur.mass / (upper - cur.t);
    std::vector<std::size_t> candidates;
    std::vector<double> values;
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
      const double t = snapshots[i].t;
      if (t > cur.t && t < upper) {
        candidates.push_back(i);
        values.push_back(hdot_squared(forward_transform(truncate(snapshots[i].field, cur.level)), alpha));
      }
    }
    if (candidates.empty()) {
      out.failed_level = k + 1;
      out.message = "no snapshot in (t_" + std::to_string(k) + ", C_" + std::to_string(k + 1) + ")";
      return out;
    }
    std::optional<std::size_t> pick;
    const bool all_equal = std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
    if (all_equal) {
      if (values.front() <= bound) {
        const double middle = 0.5 * (cur.t + upper);
        std::size_t best = 0;
        for (std::size_t c = 1; c < candidates.size(); ++c)
          if (std::abs(snapshots[candidates[c]].t - middle) < std::abs(snapshots[candidates[best]].t - middle)) best = c;
        pick = best;
      }
    } else {
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (values[c] <= bound) {
          pick = c;
          break;
        }
      }
    }
    if (!pick) {
      out.failed_level = k + 1;
      const double smallest = *std::min_element(values.begin(), values.end());
      out.message = "no admissible t_" + std::to_string(k + 1) + format(": min Hdot^2 = ", smallest) +
                    format(" > bound ", bound);
      return out;
    }
    const Snapshot& chosen = snapshots[candidates[*pick]];
    DeGiorgiState next;
    next.k = k + 1;
    next.level = upper;
    next.t = chosen.t;
    next.mass = integral(truncate(chosen.field, upper));
    next.hdot_alpha_sq = values[*pick];
    next.admissible_bound = bound;
    next.recurrence_bound = c_interp * std::pow(2.0, growth * k) * std::pow(cur.mass, power);
    next.recurrence_holds = next.mass <= next.recurrence_bound;
    out.states.push_back(next);
  }
  out.success = true;
  out.message = "constructed through k=" + std::to_string(k_max);
  return out;
}

double check_interpolation(const PhysicalField& f, double alpha) {
  const Norms nm = norms(f, alpha);
  if (nm.linf == 0.0) throw std::invalid_argument("interpolation check: zero field");
  const int n = f.grid().dimension();
  const double hdot = std::sqrt(nm.hdot_alpha_sq);
  if (hdot == 0.0) return std::numeric_limits<double>::infinity();
  return nm.l2 / (std::pow(nm.l1, 2.0 * alpha / (n + 2.0 * alpha)) * std::pow(hdot, n / (n + 2.0 * alpha)));
}

double decay_bound(double theta0_positive_mass, double t, int n, double alpha) {
  const double eps0 = smallness_epsilon0(n, alpha);
  return std::pow(theta0_positive_mass / (eps0 * std::pow(t, n / (2.0 * alpha))), 2.0 * alpha / (n + 2.0 * alpha));
}

double check_decay_bound(const DiagnosticsRecord& record, double theta0_positive_mass, const ModelParams& p, int n) {
  if (!(record.t > 0.0)) throw std::invalid_argument("decay bound: record time must be positive");
  return decay_bound(theta0_positive_mass, record.t, n, p.alpha) - record.maximum;
}

DecayBoundCheck check_decay_bound_series(std::span<const DiagnosticsRecord> series, double theta0_positive_mass,
                                         const ModelParams& p, int n, double tail_window) {
  DecayBoundCheck out;
  for (const DiagnosticsRecord& r : series) {
    if (!(r.t > 0.0)) continue;
    if (!(r.tail_fraction < tail_window)) break;
    const double margin = check_decay_bound(r, theta0_positive_mass, p, n);
    ++out.records_checked;
    if (margin < out.min_margin) {
      out.min_margin = margin;
      out.worst_time = r.t;
    }
  }
  return out;
}

Verdict DecayBoundCheck::verdict() const {
  Verdict v{"decay_bound", min_margin >= 0.0, min_margin, 0.0, ""};
  v.detail = std::to_string(records_checked) + " records" + format(", worst at t=", worst_time);
  return v;
}

ScalingPair scaling_pair_test(const PhysicalField& theta0, const ModelParams& p, int lambda, double mu,
                              const RunControls& controls_a, std::span<const double> compare_times) {
  const Grid& grid_a = theta0.grid();
  if (lambda < 1 || grid_a.resolution() % lambda != 0)
    throw std::invalid_argument("scaling pair: lambda must be a positive integer dividing N");
  if (!(mu > 0.0)) throw std::invalid_argument("scaling pair: mu must be positive");
  for (double t : compare_times)
    if (!(t >= 0.0 && mu * t <= controls_a.t_end * (1.0 + 1e-12)))
      throw std::invalid_argument("scaling pair: comparison times must lie in [0, t_end / mu]");
  const Grid grid_b(grid_a.dimension(), grid_a.resolution(), grid_a.length() / lambda);
  const double c = std::pow(double(lambda), -2.0 * p.alpha) * mu;

  PhysicalField theta0_b(grid_b);
  for (std::size_t i = 0; i < theta0.size(); ++i) theta0_b[i] = c * theta0[i];

  RunControls a = controls_a;
  a.snapshot_times.clear();
  for (double t : compare_times) a.snapshot_times.push_back(mu * t);
  a.keep_snapshots = true;
  a.snapshot_sink = nullptr;
  a.tracer_seeds.clear();
  RunControls b = a;
  b.t_end = a.t_end / mu;
  b.dt_max = a.dt_max / mu;
  b.record_interval = a.record_interval / mu;
  b.snapshot_times.assign(compare_times.begin(), compare_times.end());

  auto future_b = std::async(std::launch::async, [&] { return run(theta0_b, p, b); });
  const RunResult ra = run(theta0, p, a);
  const RunResult rb = future_b.get();

  ScalingPair out;
  out.stop_a = ra.report;
  out.stop_b = rb.report;
  const double scale = std::max(sup_norm(theta0), kTiny);
  const std::size_t count = std::min(ra.snapshots.size(), rb.snapshots.size());
  for (std::size_t s = 0; s < count; ++s) {
    const PhysicalField& fa = ra.snapshots[s].field;
    const PhysicalField& fb = rb.snapshots[s].field;
    double worst = 0.0;
    for (std::size_t i = 0; i < fa.size(); ++i) worst = std::max(worst, std::abs(c * fa[i] - fb[i]));
    out.max_deviation = std::max(out.max_deviation, worst / scale);
    out.times.push_back(rb.snapshots[s].t);
  }
  return out;
}

double criterion_integral(std::span<const DiagnosticsRecord> series, double t_max) {
  double total = 0.0;
  for (std::size_t i = 1; i < series.size(); ++i) {
    const DiagnosticsRecord& a = series[i - 1];
    const DiagnosticsRecord& b = series[i];
    if (a.t >= t_max) break;
    if (b.t <= t_max) {
      total += 0.5 * (b.t - a.t) * (a.criterion_integrand + b.criterion_integrand);
    } else {
      const double w = (t_max - a.t) / (b.t - a.t);
      const double end = a.criterion_integrand + w * (b.criterion_integrand - a.criterion_integrand);
      total += 0.5 * (t_max - a.t) * (a.criterion_integrand + end);
      break;
    }
  }
  return total;
}

}  // namespace nlt

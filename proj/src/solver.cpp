#include "nlt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nlt/fft.hpp"
#include "nlt/interpolation.hpp"
#include "nlt/operators.hpp"

namespace nlt {

std::string to_string(VelocityType v) {
  switch (v) {
    case VelocityType::gradient: return "gradient";
    case VelocityType::perp: return "perp";
    case VelocityType::none: return "none";
  }
  return "?";
}

VelocityType parse_velocity_type(const std::string& text) {
  if (text == "gradient") return VelocityType::gradient;
  if (text == "perp") return VelocityType::perp;
  if (text == "none") return VelocityType::none;
  throw std::invalid_argument("velocity: unknown type '" + text + "' (gradient, perp, none)");
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::reached_T: return "reached_T";
    case StopReason::gradient_threshold: return "gradient_threshold";
    case StopReason::resolution_loss: return "resolution_loss";
    case StopReason::nan_detected: return "nan_detected";
  }
  return "?";
}

void ModelParams::validate(int dimension) const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha out of (0,1)");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be >= 0");
  if (kappa > 0.0 && !(gamma > 0.0 && gamma < 2.0)) throw std::invalid_argument("gamma out of (0,2)");
  if (velocity == VelocityType::perp && dimension != 2)
    throw std::invalid_argument("velocity: perp requires dimension 2");
}

namespace {

SpectralVector velocity_of(const SpectralField& theta_hat, const ModelParams& p) {
  switch (p.velocity) {
    case VelocityType::gradient: return velocity_gradient_type(theta_hat, p.alpha);
    case VelocityType::perp: return velocity_perp_type(theta_hat, p.alpha);
    case VelocityType::none: break;
  }
  return make_spectral_vector(theta_hat.grid());
}

}  // namespace

NonlinearTerm evaluate_nonlinear(const SpectralField& theta_hat, const ModelParams& p) {
  const Grid& grid = theta_hat.grid();
  const int n = grid.dimension();
  SpectralField dealiased = theta_hat;
  dealias(dealiased);

  NonlinearTerm out{SpectralField(grid), velocity_of(dealiased, p), PhysicalField(grid)};
  detail::inverse_into(dealiased, out.theta);
  const SpectralVector grad_hat = gradient(dealiased);

  PhysicalField product(grid);
  PhysicalField u(grid), g(grid);
  std::vector<double> speed_sq(grid.size(), 0.0), grad_sq(grid.size(), 0.0);
  for (int j = 0; j < n; ++j) {
    detail::inverse_into(out.velocity_hat[j], u);
    detail::inverse_into(grad_hat[j], g);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      product[i] += u[i] * g[i];
      speed_sq[i] += u[i] * u[i];
      grad_sq[i] += g[i] * g[i];
    }
  }
  out.finite = product.all_finite() && out.theta.all_finite();
  out.max_speed = std::sqrt(*std::max_element(speed_sq.begin(), speed_sq.end()));
  out.grad_inf = std::sqrt(*std::max_element(grad_sq.begin(), grad_sq.end()));

  detail::forward_into(product, out.value);
  double total = 0.0, tail = 0.0;
  Complex* v = out.value.data();
  for_each_mode(grid, [&](std::size_t i, const Index& k, double weight) {
    const double e = weight * std::norm(v[i]);
    total += e;
    if (!grid.in_dealiased_band(k)) {
      tail += e;
      v[i] = Complex{};
    } else {
      v[i] = -v[i];
    }
  });
  out.tail_fraction = total > 0.0 ? tail / total : 0.0;
  if (!std::isfinite(out.tail_fraction)) out.finite = false;
  return out;
}

SpectralField rhs(const SpectralField& theta_hat, const ModelParams& p) {
  return evaluate_nonlinear(theta_hat, p).value;
}

double cfl_dt(const Grid& grid, double max_speed, double c_cfl, double dt_max) {
  return std::min(dt_max, c_cfl * grid.spacing() / std::max(max_speed, kSpeedFloor));
}

namespace {

// Decay rates kappa (2 pi |k| / L)^gamma per stored mode (empty when kappa = 0).
std::vector<double> decay_rates(const Grid& grid, const ModelParams& p) {
  if (p.kappa == 0.0) return {};
  std::vector<double> rates(grid.spectral_size());
  for_each_mode(grid, [&](std::size_t i, const Index& k, double) { rates[i] = p.kappa * lambda_multiplier(grid, k, p.gamma); });
  return rates;
}

// out = a E(ta) x + b E(tb) (y + dt z); empty rates means E = 1.
void combine(SpectralField& out, double a, double ta, const SpectralField& x, double b, double tb,
             const SpectralField& y, double dt, const SpectralField& z, const std::vector<double>& rates) {
  Complex* o = out.data();
  const Complex* px = x.data();
  const Complex* py = y.data();
  const Complex* pz = z.data();
  const std::size_t size = out.size();
  if (rates.empty()) {
    for (std::size_t i = 0; i < size; ++i) o[i] = a * px[i] + b * (py[i] + dt * pz[i]);
    return;
  }
  for (std::size_t i = 0; i < size; ++i)
    o[i] = a * std::exp(-rates[i] * ta) * px[i] + b * std::exp(-rates[i] * tb) * (py[i] + dt * pz[i]);
}

}  // namespace

StepResult step(SolverState& state, const ModelParams& p, const NonlinearTerm* first, bool keep_stage_velocity) {
  const Grid& grid = state.theta_hat.grid();
  const double dt = state.dt;
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const std::vector<double> rates = decay_rates(grid, p);
  const SpectralField& theta0 = state.theta_hat;
  const SpectralField zero(grid);

  StepResult result;
  std::optional<NonlinearTerm> own;
  if (!first) {
    own.emplace(evaluate_nonlinear(theta0, p));
    first = &*own;
  }
  if (!first->finite) {
    result.finite = false;
    return result;
  }

  SpectralField theta1(grid), theta2(grid), theta3(grid);
  combine(theta1, 0.0, 0.0, zero, 1.0, dt, theta0, dt, first->value, rates);
  NonlinearTerm n1 = evaluate_nonlinear(theta1, p);
  if (!n1.finite) {
    result.finite = false;
    return result;
  }
  combine(theta2, 0.75, 0.5 * dt, theta0, 0.25, -0.5 * dt, theta1, dt, n1.value, rates);
  NonlinearTerm n2 = evaluate_nonlinear(theta2, p);
  if (!n2.finite) {
    result.finite = false;
    return result;
  }
  combine(theta3, 1.0 / 3.0, dt, theta0, 2.0 / 3.0, 0.5 * dt, theta2, dt, n2.value, rates);
  for (const Complex& c : theta3.coefficients()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      result.finite = false;
      return result;
    }
  }
  if (keep_stage_velocity)
    result.stage_velocity = std::array<SpectralVector, 3>{first->velocity_hat, std::move(n1.velocity_hat),
                                                          std::move(n2.velocity_hat)};
  state.theta_hat = std::move(theta3);
  state.t += dt;
  ++state.step_count;
  return result;
}

void advance_tracers(std::span<Tracer> tracers, const std::array<SpectralVector, 3>& stage_velocity, double dt) {
  if (tracers.empty()) return;
  const Grid& grid = stage_velocity[0].grid();
  const int n = grid.dimension();
  for (Tracer& tr : tracers) {
    const Point x0 = tr.position;
    Point x1{}, x2{}, x3{};
    const auto u0 = interpolate(stage_velocity[0], x0);
    for (int j = 0; j < n; ++j) x1[j] = x0[j] + dt * u0[j];
    const auto u1 = interpolate(stage_velocity[1], x1);
    for (int j = 0; j < n; ++j) x2[j] = 0.75 * x0[j] + 0.25 * (x1[j] + dt * u1[j]);
    const auto u2 = interpolate(stage_velocity[2], x2);
    for (int j = 0; j < n; ++j) x3[j] = x0[j] / 3.0 + 2.0 / 3.0 * (x2[j] + dt * u2[j]);
    tr.position = wrap_point(grid, x3);
  }
}

namespace {

void check_controls(const RunControls& c) {
  if (!(c.t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");
  if (!(c.c_cfl > 0.0 && c.c_cfl <= 1.0)) throw std::invalid_argument("c_cfl out of (0,1]");
  if (!(c.dt_max > 0.0)) throw std::invalid_argument("dt_max must be > 0");
  if (!(c.grad_factor > 1.0)) throw std::invalid_argument("grad_factor must be > 1");
  if (!(c.tail_threshold > 0.0)) throw std::invalid_argument("tail_threshold must be > 0");
  if (!(c.record_interval > 0.0)) throw std::invalid_argument("record_interval must be > 0");
}

TracerSample sample_tracers(const std::vector<Tracer>& tracers, const SpectralField& theta_hat, double t) {
  TracerSample s;
  s.t = t;
  const TrigInterpolant interp(theta_hat);
  for (const Tracer& tr : tracers) {
    s.positions.push_back(tr.position);
    s.values.push_back(interp.value(tr.position));
  }
  return s;
}

}  // namespace

RunResult run(const PhysicalField& initial, const ModelParams& p, const RunControls& controls) {
  const Grid& grid = initial.grid();
  p.validate(grid.dimension());
  check_controls(controls);

  RunResult result;
  SolverState state{0.0, forward_transform(initial), 0.0, 0};
  dealias(state.theta_hat);

  std::vector<Tracer> tracers;
  {
    const TrigInterpolant interp(state.theta_hat);
    for (const Point& seed : controls.tracer_seeds) {
      const Point x = wrap_point(grid, seed);
      tracers.push_back({x, interp.value(x)});
    }
  }

  std::vector<double> snapshot_times = controls.snapshot_times;
  std::sort(snapshot_times.begin(), snapshot_times.end());
  std::size_t next_snapshot = 0;
  std::size_t next_record = 0;
  const double eps = 1e-12 * std::max(1.0, controls.t_end);
  auto record_time = [&](std::size_t i) { return static_cast<double>(i) * controls.record_interval; };

  double grad0 = -1.0;
  for (;;) {
    const NonlinearTerm current = evaluate_nonlinear(state.theta_hat, p);
    if (grad0 < 0.0) grad0 = current.grad_inf;
    const double t = state.t;

    while (record_time(next_record) <= t + eps && record_time(next_record) <= controls.t_end + eps) {
      result.series.push_back(measure(state.theta_hat, current.theta, p.alpha, t, current.tail_fraction));
      if (!tracers.empty()) result.tracer_series.push_back(sample_tracers(tracers, state.theta_hat, t));
      ++next_record;
    }
    while (next_snapshot < snapshot_times.size() && snapshot_times[next_snapshot] <= t + eps) {
      Snapshot snap{t, current.theta};
      if (controls.snapshot_sink) controls.snapshot_sink(snap);
      if (controls.keep_snapshots) result.snapshots.push_back(std::move(snap));
      ++next_snapshot;
    }

    std::optional<StopReason> reason;
    if (!current.finite) {
      reason = StopReason::nan_detected;
    } else if (grad0 > 0.0 && current.grad_inf > controls.grad_factor * grad0) {
      reason = StopReason::gradient_threshold;
    } else if (current.tail_fraction > controls.tail_threshold) {
      reason = StopReason::resolution_loss;
    } else if (t >= controls.t_end - eps) {
      reason = StopReason::reached_T;
    }
    if (reason) {
      result.report = {*reason, t, measure(state.theta_hat, current.theta, p.alpha, t, current.tail_fraction)};
      break;
    }
    if (result.steps >= controls.max_steps) throw std::runtime_error("run: step limit exceeded");

    double next_event = controls.t_end;
    if (record_time(next_record) <= controls.t_end + eps) next_event = std::min(next_event, record_time(next_record));
    if (next_snapshot < snapshot_times.size()) next_event = std::min(next_event, snapshot_times[next_snapshot]);
    double dt = cfl_dt(grid, current.max_speed, controls.c_cfl, controls.dt_max);
    bool lands = false;
    if (t + dt >= next_event - eps) {
      dt = next_event - t;
      lands = true;
    }
    state.dt = dt;
    const StepResult stepped = step(state, p, &current, !tracers.empty());
    if (!stepped.finite) {
      result.report = {StopReason::nan_detected, t, measure(state.theta_hat, current.theta, p.alpha, t, current.tail_fraction)};
      break;
    }
    if (stepped.stage_velocity) advance_tracers(tracers, *stepped.stage_velocity, dt);
    if (lands) state.t = next_event;
    result.dt_history.push_back(dt);
    ++result.steps;
  }
  return result;
}

}  // namespace nlt

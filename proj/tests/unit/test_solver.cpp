#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlt/fft.hpp"
#include "nlt/initial_data.hpp"
#include "nlt/interpolation.hpp"
#include "nlt/norms.hpp"
#include "nlt/operators.hpp"
#include "nlt/solver.hpp"

using namespace nlt;
using std::numbers::pi;

namespace {

PhysicalField gaussian(int n, int N, double sigma = 0.0) {
  InitialData d;
  d.sigma = sigma;
  return make_initial(Grid(n, N, 2.0 * pi), d);
}

SpectralField dealiased(const PhysicalField& f) {
  SpectralField s = forward_transform(f);
  dealias(s);
  return s;
}

}  // namespace

TEST_CASE("model parameter validation") {
  ModelParams p;
  p.alpha = 1.5;
  CHECK_THROWS_WITH(p.validate(2), "alpha out of (0,1)");
  p.alpha = 0.5;
  p.velocity = VelocityType::perp;
  CHECK_THROWS(p.validate(3));
  CHECK_NOTHROW(p.validate(2));
  p.kappa = -1.0;
  CHECK_THROWS(p.validate(2));
  CHECK(parse_velocity_type("perp") == VelocityType::perp);
  CHECK_THROWS(parse_velocity_type("curl"));
}

TEST_CASE("zero data stays zero") {
  const Grid g(2, 16, 1.0);
  RunControls c;
  c.t_end = 0.05;
  const RunResult r = run(PhysicalField(g), ModelParams{}, c);
  CHECK(r.report.reason == StopReason::reached_T);
  for (const auto& rec : r.series) {
    CHECK(rec.mass == 0.0);
    CHECK(rec.maximum == 0.0);
    CHECK(rec.hdot_alpha_sq == 0.0);
  }
}

TEST_CASE("pure dissipation is integrated exactly") {
  // velocity none: theta_hat(k, t) = exp(-kappa (2 pi |k| / L)^gamma t) theta_hat(k, 0).
  const PhysicalField f = gaussian(2, 32, 0.6);
  ModelParams p;
  p.velocity = VelocityType::none;
  p.kappa = 0.7;
  p.gamma = 1.3;
  SolverState st{0.0, dealiased(f), 0.05, 0};
  const SpectralField start = st.theta_hat;
  for (int i = 0; i < 4; ++i) step(st, p);
  double worst = 0.0;
  for_each_mode(f.grid(), [&](std::size_t off, const Index& k, double) {
    const double decay = std::exp(-p.kappa * lambda_multiplier(f.grid(), k, p.gamma) * 0.2);
    worst = std::max(worst, std::abs(st.theta_hat.data()[off] - decay * start.data()[off]));
  });
  CHECK(worst < 1e-14);
}

TEST_CASE("time stepping is third order") {
  const PhysicalField f = gaussian(1, 64, 0.5);
  const ModelParams p;
  auto solve = [&](int steps) {
    SolverState st{0.0, dealiased(f), 0.4 / steps, 0};
    for (int i = 0; i < steps; ++i) step(st, p);
    return inverse_transform(st.theta_hat);
  };
  const PhysicalField ref = solve(640);
  const double e1 = l2_distance(solve(20), ref);
  const double e2 = l2_distance(solve(40), ref);
  CHECK(e1 / e2 == doctest::Approx(8.0).epsilon(0.15));
}

TEST_CASE("perp velocity conserves the mass, gradient velocity dissipates it") {
  const PhysicalField f = gaussian(2, 64);
  RunControls c;
  c.t_end = 0.1;
  ModelParams p;
  p.velocity = VelocityType::perp;
  const RunResult perp = run(f, p, c);
  CHECK(std::abs(perp.series.back().mass - perp.series.front().mass) < 1e-12 * perp.series.front().mass);
  p.velocity = VelocityType::gradient;
  const RunResult grad = run(f, p, c);
  CHECK(grad.series.back().mass < grad.series.front().mass);
}

TEST_CASE("run lands records and snapshots exactly") {
  const PhysicalField f = gaussian(2, 32, 0.8);
  RunControls c;
  c.t_end = 0.1;
  c.record_interval = 0.025;
  c.snapshot_times = {0.0, 0.0333, 0.1};
  const RunResult r = run(f, ModelParams{}, c);
  REQUIRE(r.series.size() == 5);
  for (std::size_t i = 0; i < r.series.size(); ++i) CHECK(r.series[i].t == doctest::Approx(0.025 * i).epsilon(1e-14));
  REQUIRE(r.snapshots.size() == 3);
  CHECK(r.snapshots[1].t == doctest::Approx(0.0333).epsilon(1e-14));
  CHECK(r.report.t_stop == doctest::Approx(0.1).epsilon(1e-14));
  for (double dt : r.dt_history) CHECK(dt <= c.dt_max * (1.0 + 1e-12));
}

TEST_CASE("cfl rule") {
  const Grid g(2, 64, 2.0 * pi);
  CHECK(cfl_dt(g, 10.0, 0.4, 1.0) == doctest::Approx(0.4 * g.spacing() / 10.0));
  CHECK(cfl_dt(g, 0.0, 0.4, 0.01) == 0.01);
}

TEST_CASE("gradient threshold stop") {
  const PhysicalField f = gaussian(2, 64);
  RunControls c;
  c.grad_factor = 1.05;
  c.tail_threshold = 1.0;
  const RunResult r = run(f, ModelParams{}, c);
  CHECK(r.report.reason == StopReason::gradient_threshold);
  CHECK(r.report.final_diagnostics.grad_inf > 1.05 * r.series.front().grad_inf);
}

TEST_CASE("resolution loss stop") {
  const PhysicalField f = gaussian(2, 32);
  RunControls c;
  c.tail_threshold = 1e-12;
  const RunResult r = run(f, ModelParams{}, c);
  CHECK(r.report.reason == StopReason::resolution_loss);
  CHECK(r.report.final_diagnostics.tail_fraction > 1e-12);
}

TEST_CASE("tracer moves with the flow at short times") {
  const PhysicalField f = gaussian(2, 64, 0.8);
  RunControls c;
  c.t_end = 0.05;
  const Point seed{2.5, 3.0, 0.0};
  c.tracer_seeds = {seed};
  const RunResult r = run(f, ModelParams{}, c);
  REQUIRE(!r.tracer_series.empty());
  // Forward Euler over the first record interval with the initial velocity.
  const SpectralVector u = velocity_gradient_type(dealiased(f), 0.5);
  const auto v = interpolate(u, seed);
  const auto& s1 = r.tracer_series[1];
  const double dt = s1.t;
  CHECK(s1.positions[0][0] == doctest::Approx(seed[0] + dt * v[0]).epsilon(1e-4));
  CHECK(s1.positions[0][1] == doctest::Approx(seed[1] + dt * v[1]).epsilon(1e-4));
  const double theta0 = TrigInterpolant(dealiased(f)).value(seed);
  CHECK(std::abs(r.tracer_series.back().values[0] - theta0) < 1e-6);
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlt/fft.hpp"
#include "nlt/norms.hpp"
#include "nlt/operators.hpp"

using namespace nlt;
using std::numbers::pi;

namespace {

PhysicalField sample(const Grid& g, auto fn) {
  PhysicalField f(g);
  for_each_point(g, [&](std::size_t off, const Index& i) {
    Point x{g.coordinate(i[0]), g.coordinate(i[1]), g.coordinate(i[2])};
    f[off] = fn(x);
  });
  return f;
}

double max_abs_diff(const PhysicalField& a, const PhysicalField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid rejects odd or tiny resolutions") {
  CHECK_THROWS(Grid(2, 7, 1.0));
  CHECK_THROWS(Grid(2, 2, 1.0));
  CHECK_THROWS(Grid(4, 8, 1.0));
  const Grid g(2, 8, 3.0);
  CHECK(g.size() == 64);
  CHECK(g.spectral_size() == 8 * 5);
  CHECK(g.wavenumber(4) == -4);
}

TEST_CASE("zero mode is the integral") {
  const Grid g(2, 16, 3.0);
  const PhysicalField f = sample(g, [](const Point&) { return 1.0; });
  const SpectralField s = forward_transform(f);
  CHECK(s.coeff({0, 0, 0}).real() == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("single cosine lands on two coefficients") {
  const Grid g(1, 32, 2.0);
  const PhysicalField f = sample(g, [](const Point& x) { return std::cos(2.0 * pi * 3.0 * x[0] / 2.0); });
  const SpectralField s = forward_transform(f);
  // coeff(k) = (L/N) sum cos(...) e^{-2 pi i k j/N} = L/2 at k = +-3.
  CHECK(std::abs(s.coeff({3, 0, 0}) - Complex(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(s.coeff({-3, 0, 0}) - Complex(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(s.coeff({2, 0, 0})) < 1e-14);
}

TEST_CASE("round trip is exact to roundoff in every dimension") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 1; n <= 3; ++n) {
    const Grid g(n, n == 3 ? 16 : 64, 5.0);
    PhysicalField f(g);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = u(rng);
    const PhysicalField back = inverse_transform(forward_transform(f));
    CHECK(l2_distance(back, f) / l2_distance(f, PhysicalField(g)) < 1e-13);
  }
}

TEST_CASE("non Hermitian spectrum is rejected by the inverse transform") {
  const Grid g(1, 16, 1.0);
  SpectralField s(g);
  s.coefficients()[0] = Complex(0.0, 1.0);
  CHECK_THROWS_AS(inverse_transform(s), HermitianError);
}

TEST_CASE("fractional Laplacian eigenvalues on a Fourier mode") {
  const Grid g(2, 32, 3.0);
  const double k1 = 2.0, k2 = 5.0;
  const PhysicalField f =
      sample(g, [&](const Point& x) { return std::sin(2.0 * pi * (k1 * x[0] + k2 * x[1]) / 3.0); });
  const double freq = 2.0 * pi * std::hypot(k1, k2) / 3.0;
  for (double s : {0.5, 1.0, 1.5, 2.0, -0.7}) {
    const PhysicalField out = inverse_transform(fractional_laplacian(forward_transform(f), s));
    PhysicalField expect(g);
    for (std::size_t i = 0; i < f.size(); ++i) expect[i] = std::pow(freq, s) * f[i];
    CHECK(max_abs_diff(out, expect) < 1e-12 * std::max(1.0, std::pow(freq, s)));
  }
}

TEST_CASE("zero mode of Lambda^s vanishes for s != 0") {
  const Grid g(1, 16, 1.0);
  PhysicalField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 2.0;
  const SpectralField s = fractional_laplacian(forward_transform(f), 0.5);
  CHECK(std::abs(s.coeff({0, 0, 0})) == 0.0);
  CHECK(lambda_multiplier(g, {0, 0, 0}, 0.0) == 1.0);
}

TEST_CASE("gradient-type velocity of a mode matches the closed form") {
  // theta = cos(a x), a = 2 pi k / L: u = d/dx Lambda^{-2+2 alpha} theta = -a^{2 alpha - 1} sin(a x).
  const Grid g(1, 64, 4.0);
  const double a = 2.0 * pi * 3.0 / 4.0, alpha = 0.3;
  const PhysicalField f = sample(g, [&](const Point& x) { return std::cos(a * x[0]); });
  const PhysicalField u = inverse_transform(velocity_gradient_type(forward_transform(f), alpha)[0]);
  const PhysicalField expect = sample(g, [&](const Point& x) { return -std::pow(a, 2.0 * alpha - 1.0) * std::sin(a * x[0]); });
  CHECK(max_abs_diff(u, expect) < 1e-13);
}

TEST_CASE("div u = -Lambda^{2 alpha} theta and the perp velocity is divergence free") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  const Grid g(2, 32, 2.0);
  SpectralField th(g);
  for_each_mode(g, [&](std::size_t, const Index& k, double) {
    if (!g.is_nyquist(k[0]) && !g.is_nyquist(k[1])) th.set_mode(k, Complex(normal(rng), normal(rng)));
  });
  th.enforce_hermitian();
  for (double alpha : {0.25, 0.5, 0.75}) {
    const PhysicalField div = inverse_transform(divergence(velocity_gradient_type(th, alpha)));
    const PhysicalField lap = inverse_transform(fractional_laplacian(th, 2.0 * alpha));
    double num = 0.0;
    for (std::size_t i = 0; i < div.size(); ++i) num = std::max(num, std::abs(div[i] + lap[i]));
    CHECK(num < 1e-12 * sup_norm(lap));
    const PhysicalField perp = inverse_transform(divergence(velocity_perp_type(th, alpha)));
    CHECK(sup_norm(perp) < 1e-12 * sup_norm(lap));
  }
  CHECK_THROWS(velocity_perp_type(SpectralField(Grid(3, 8, 1.0)), 0.5));
}

TEST_CASE("Riesz tensor trace is -Lambda^{2 alpha}") {
  const Grid g(2, 32, 2.0);
  const PhysicalField f =
      sample(g, [](const Point& x) { return std::exp(std::cos(pi * x[0]) + 0.5 * std::sin(pi * x[1])); });
  SpectralField th = forward_transform(f);
  dealias(th);
  const RieszTensor t = riesz_tensor_lambda2alpha(th, 0.4);
  const PhysicalField a = inverse_transform(t(0, 0)), b = inverse_transform(t(1, 1));
  const PhysicalField lap = inverse_transform(fractional_laplacian(th, 0.8));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] + b[i] + lap[i]));
  CHECK(worst < 1e-12 * sup_norm(lap));
  CHECK(max_abs_diff(inverse_transform(t(0, 1)), inverse_transform(t(1, 0))) < 1e-14);
}

TEST_CASE("dealias keeps exactly the 2/3 band") {
  const Grid g(1, 12, 1.0);
  SpectralField s(g);
  for (int k = 0; k <= 6; ++k) s.set_mode({k, 0, 0}, Complex(1.0, 0.0));
  dealias(s);
  for (int k = 0; k <= 6; ++k) CHECK((std::abs(s.coeff({k, 0, 0})) > 0.0) == (k <= 4));
}

TEST_CASE("norms of a single mode") {
  const Grid g(2, 32, 3.0);
  const double a = 2.0 * pi * 2.0 / 3.0;
  const PhysicalField f = sample(g, [&](const Point& x) { return std::cos(a * x[0]); });
  const Norms nm = norms(f, 0.5);
  // ||cos||_2^2 = L^2 / 2, ||Lambda^{1/2} cos||^2 = a L^2 / 2.
  CHECK(nm.l2 == doctest::Approx(std::sqrt(4.5)).epsilon(1e-13));
  CHECK(nm.hdot_alpha_sq == doctest::Approx(a * 4.5).epsilon(1e-13));
  CHECK(nm.linf == doctest::Approx(1.0));
  CHECK(nm.l1_positive == doctest::Approx(nm.l1 / 2.0).epsilon(1e-12));
  CHECK(spectral_l2_squared(forward_transform(f)) == doctest::Approx(4.5).epsilon(1e-13));
  CHECK(std::abs(integral(f)) < 1e-14);
}

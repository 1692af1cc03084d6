#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlt/fft.hpp"
#include "nlt/interpolation.hpp"

using namespace nlt;
using std::numbers::pi;

namespace {

PhysicalField shifted_cosine(const Grid& g, double x0, double y0) {
  PhysicalField f(g);
  const double a = 2.0 * pi / g.length();
  for_each_point(g, [&](std::size_t off, const Index& i) {
    f[off] = std::cos(a * (g.coordinate(i[0]) - x0)) * std::cos(a * (g.coordinate(i[1]) - y0));
  });
  return f;
}

}  // namespace

TEST_CASE("interpolant is exact off the grid with derivatives") {
  const Grid g(2, 16, 2.0);
  const PhysicalField f = shifted_cosine(g, 0.3, 1.1);
  const SpectralField s = forward_transform(f);
  const TrigInterpolant ip(s);
  const Point x{0.123, 1.777, 0.0};
  const double a = pi;
  const double cx = std::cos(a * (x[0] - 0.3)), sx = std::sin(a * (x[0] - 0.3));
  const double cy = std::cos(a * (x[1] - 1.1)), sy = std::sin(a * (x[1] - 1.1));
  const LocalExpansion e = ip.expand(x);
  CHECK(e.value == doctest::Approx(cx * cy).epsilon(1e-13));
  CHECK(ip.value(x) == doctest::Approx(cx * cy).epsilon(1e-13));
  CHECK(e.gradient[0] == doctest::Approx(-a * sx * cy).epsilon(1e-12));
  CHECK(e.gradient[1] == doctest::Approx(-a * cx * sy).epsilon(1e-12));
  CHECK(e.hessian[0][1] == doctest::Approx(a * a * sx * sy).epsilon(1e-12));
  CHECK(e.hessian[0][0] == doctest::Approx(-a * a * cx * cy).epsilon(1e-12));
}

TEST_CASE("refined extrema locate an off-grid peak") {
  const Grid g(2, 32, 2.0);
  const PhysicalField f = shifted_cosine(g, 0.71, 0.33);
  const SpectralField s = forward_transform(f);
  const Extremum mx = refined_maximum(s, f);
  CHECK(mx.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mx.location[0] == doctest::Approx(0.71).epsilon(1e-8));
  CHECK(mx.location[1] == doctest::Approx(0.33).epsilon(1e-8));
  const Extremum mn = refined_minimum(s, f);
  CHECK(mn.value == doctest::Approx(-1.0).epsilon(1e-12));
  double best = -1e300;
  for (std::size_t i = 0; i < f.size(); ++i) best = std::max(best, f[i]);
  CHECK(mx.value >= best);
}

TEST_CASE("wrap_point") {
  const Grid g(2, 8, 2.0);
  const Point p = wrap_point(g, {-0.5, 4.25, 7.0});
  CHECK(p[0] == doctest::Approx(1.5));
  CHECK(p[1] == doctest::Approx(0.25));
  CHECK(p[2] == 7.0);
}

#include "nlt/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nlt/fft.hpp"
#include "nlt/norms.hpp"

namespace nlt {

namespace {

double periodic_distance_sq(const Grid& grid, const Index& index, const Point& c) {
  const double L = grid.length();
  double s = 0.0;
  for (int j = 0; j < grid.dimension(); ++j) {
    double d = grid.coordinate(index[j]) - c[j];
    d -= L * std::round(d / L);
    s += d * d;
  }
  return s;
}

Point box_centre(const Grid& grid) {
  Point c{0.0, 0.0, 0.0};
  for (int j = 0; j < grid.dimension(); ++j) c[j] = 0.5 * grid.length();
  return c;
}

PhysicalField random_field(const Grid& grid, const InitialData& d) {
  std::mt19937_64 rng(d.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField spectrum(grid);
  for_each_mode(grid, [&](std::size_t, const Index& k, double) {
    int top = 0;
    for (int j = 0; j < grid.dimension(); ++j) top = std::max(top, std::abs(k[j]));
    if (top == 0 || top > d.k_cut) return;
    const double re = normal(rng);
    const double im = normal(rng);
    spectrum.set_mode(k, Complex(re, im));
  });
  spectrum.enforce_hermitian();
  PhysicalField f = inverse_transform(spectrum);
  const double sup = sup_norm(f);
  if (sup > 0.0)
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= d.amplitude / sup;
  return f;
}

}  // namespace

std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::gaussian: return "gaussian";
    case InitialKind::smooth_bump: return "smooth_bump";
    case InitialKind::dipole: return "dipole";
    case InitialKind::random_bandlimited: return "random_bandlimited";
  }
  return "unknown";
}

InitialKind parse_initial_kind(const std::string& text) {
  if (text == "gaussian") return InitialKind::gaussian;
  if (text == "smooth_bump") return InitialKind::smooth_bump;
  if (text == "dipole") return InitialKind::dipole;
  if (text == "random_bandlimited") return InitialKind::random_bandlimited;
  throw std::invalid_argument("initial.kind: unknown kind '" + text + "'");
}

void InitialData::validate(const Grid& grid) const {
  if (!std::isfinite(A)) throw std::invalid_argument("initial.A must be finite");
  if (sigma < 0.0) throw std::invalid_argument("initial.sigma must be >= 0");
  if (radius < 0.0) throw std::invalid_argument("initial.radius must be >= 0");
  if (separation < 0.0) throw std::invalid_argument("initial.separation must be >= 0");
  if (k_cut < 1 || k_cut >= grid.resolution() / 2) throw std::invalid_argument("initial.k_cut out of [1, N/2)");
  if (!(amplitude >= 0.0)) throw std::invalid_argument("initial.amplitude must be >= 0");
}

PhysicalField make_initial(const Grid& grid, const InitialData& d) {
  d.validate(grid);
  if (d.kind == InitialKind::random_bandlimited) return random_field(grid, d);
  const Point c = d.center.value_or(box_centre(grid));
  const double sigma = d.sigma > 0.0 ? d.sigma : grid.length() / 20.0;
  const double radius = d.radius > 0.0 ? d.radius : grid.length() / 4.0;
  const double sep = d.separation > 0.0 ? d.separation : 4.0 * sigma;
  Point plus = c, minus = c;
  plus[0] += 0.5 * sep;
  minus[0] -= 0.5 * sep;

  PhysicalField f(grid);
  for_each_point(grid, [&](std::size_t off, const Index& idx) {
    switch (d.kind) {
      case InitialKind::gaussian:
        f[off] = d.A * std::exp(-periodic_distance_sq(grid, idx, c) / (2.0 * sigma * sigma));
        break;
      case InitialKind::smooth_bump: {
        const double q = periodic_distance_sq(grid, idx, c) / (radius * radius);
        f[off] = q < 1.0 ? d.A * std::exp(1.0 - 1.0 / (1.0 - q)) : 0.0;
        break;
      }
      case InitialKind::dipole:
        f[off] = d.A * (std::exp(-periodic_distance_sq(grid, idx, plus) / (2.0 * sigma * sigma)) -
                        std::exp(-periodic_distance_sq(grid, idx, minus) / (2.0 * sigma * sigma)));
        break;
      default:
        break;
    }
  });
  return f;
}

}  // namespace nlt

#include "nlt/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlt/fft.hpp"
#include "nlt/operators.hpp"

namespace nlt {

double integral(const PhysicalField& field) {
  double sum = 0.0;
  for (double v : field.values()) sum += v;
  return sum * field.grid().cell_volume();
}

double positive_integral(const PhysicalField& field) {
  double sum = 0.0;
  for (double v : field.values()) sum += std::max(v, 0.0);
  return sum * field.grid().cell_volume();
}

double sup_norm(const PhysicalField& field) {
  double m = 0.0;
  for (double v : field.values()) m = std::max(m, std::abs(v));
  return m;
}

double l2_distance(const PhysicalField& f, const PhysicalField& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("l2_distance: grids differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += (f[i] - g[i]) * (f[i] - g[i]);
  return std::sqrt(sum * f.grid().cell_volume());
}

double hdot_squared(const SpectralField& spectrum, double alpha) {
  const Grid& grid = spectrum.grid();
  const Complex* c = spectrum.data();
  double sum = 0.0;
  for_each_mode(grid, [&](std::size_t i, const Index& k, double weight) {
    sum += weight * lambda_multiplier(grid, k, 2.0 * alpha) * std::norm(c[i]);
  });
  return sum / grid.volume();
}

double spectral_l2_squared(const SpectralField& spectrum) {
  const Grid& grid = spectrum.grid();
  const Complex* c = spectrum.data();
  double sum = 0.0;
  for_each_mode(grid, [&](std::size_t i, const Index&, double weight) { sum += weight * std::norm(c[i]); });
  return sum / grid.volume();
}

Norms norms(const PhysicalField& field, double alpha) {
  Norms out;
  double abs_sum = 0.0, pos_sum = 0.0, sq_sum = 0.0;
  for (double v : field.values()) {
    abs_sum += std::abs(v);
    pos_sum += std::max(v, 0.0);
    sq_sum += v * v;
    out.linf = std::max(out.linf, std::abs(v));
  }
  const double cell = field.grid().cell_volume();
  out.l1 = abs_sum * cell;
  out.l1_positive = pos_sum * cell;
  out.l2 = std::sqrt(sq_sum * cell);
  out.hdot_alpha_sq = hdot_squared(forward_transform(field), alpha);
  return out;
}

}  // namespace nlt

#include "nlt/monitors.hpp"

#include <algorithm>
#include <cmath>

#include "nlt/fft.hpp"
#include "nlt/interpolation.hpp"
#include "nlt/norms.hpp"
#include "nlt/operators.hpp"

namespace nlt {

double max_magnitude(const PhysicalVector& v) {
  double best = 0.0;
  const std::size_t size = v[0].size();
  for (std::size_t i = 0; i < size; ++i) {
    double s = 0.0;
    for (int j = 0; j < v.dimension(); ++j) s += v[j][i] * v[j][i];
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

DiagnosticsRecord measure(const SpectralField& theta_hat, const PhysicalField& theta, double alpha, double t,
                          double tail_fraction) {
  const Grid& grid = theta.grid();
  const int n = grid.dimension();
  DiagnosticsRecord r;
  r.t = t;
  r.mass = integral(theta);
  r.mass_positive = positive_integral(theta);
  r.maximum = refined_maximum(theta_hat, theta).value;
  r.minimum = refined_minimum(theta_hat, theta).value;
  r.hdot_alpha_sq = hdot_squared(theta_hat, alpha);

  const SpectralVector grad_hat = gradient(theta_hat);
  PhysicalVector grad = make_physical_vector(grid);
  for (int j = 0; j < n; ++j) detail::inverse_into(grad_hat[j], grad[j]);
  r.grad_inf = max_magnitude(grad);

  const RieszTensor tensor = riesz_tensor_lambda2alpha(theta_hat, alpha);
  PhysicalField entry(grid);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int l = j; l < n; ++l) {
      detail::inverse_into(tensor(j, l), entry);
      worst = std::max(worst, sup_norm(entry));
    }
  }
  r.criterion_integrand = worst;
  r.tail_fraction = tail_fraction;
  return r;
}

}  // namespace nlt

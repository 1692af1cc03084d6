#include "nlt/constants.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nlt {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimension(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
}

// Jacobi theta sum 1 + 2 sum_{m>=1} exp(-pi m^2 t), for t >= 1.
double jacobi_theta(double t) {
  double sum = 1.0;
  for (int m = 1; m < 64; ++m) {
    const double term = 2.0 * std::exp(-kPi * m * m * t);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

double unit_ball_volume(int n) {
  check_dimension(n);
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) {
  check_dimension(n);
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double velocity_kernel_constant(int n, double alpha) {
  check_dimension(n);
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha out of (0,1)");
  return -std::tgamma(0.5 * n + alpha) /
         (std::pow(kPi, 0.5 * n) * std::pow(2.0, 1.0 - 2.0 * alpha) * std::tgamma(1.0 - alpha));
}

double singular_integral_constant(int n, double s) {
  check_dimension(n);
  if (!(s > 0.0 && s < 2.0)) throw std::invalid_argument("s out of (0,2)");
  return std::pow(2.0, s) * std::tgamma(0.5 * (n + s)) / (std::pow(kPi, 0.5 * n) * std::abs(std::tgamma(-0.5 * s)));
}

double interpolation_constant(int n, double alpha) {
  return std::sqrt(2.0) * std::pow(unit_ball_volume(n), alpha / (n + 2.0 * alpha));
}

double smallness_epsilon0(int n, double alpha) {
  const double c = interpolation_constant(n, alpha);
  const double a2 = alpha * alpha;
  return std::pow(2.0, -(n + alpha) * (n + 2.0 * alpha) / (2.0 * a2)) / std::pow(c, (n + 2.0 * alpha) / (2.0 * alpha));
}

double lattice_zeta(int n, double p) {
  check_dimension(n);
  const double z = 0.5 * p;
  const double half_n = 0.5 * n;
  if (z == half_n) return std::numeric_limits<double>::infinity();
  // Riemann's splitting of the Mellin integral of theta^n - 1 at t = 1,
  // using theta(1/t) = sqrt(t) theta(t) on (0, 1).
  auto integrand = [&](double t) {
    const double tail = std::pow(jacobi_theta(t), n) - 1.0;
    return (std::pow(t, z - 1.0) + std::pow(t, half_n - z - 1.0)) * tail;
  };
  const double j = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 1.0, std::numeric_limits<double>::infinity(), 15, 1e-14);
  return std::pow(kPi, z) / std::tgamma(z + 1.0) * (z * j - 1.0 - z / (half_n - z));
}

}  // namespace nlt

#include "nlt/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlt {

namespace {

double frequency_unit(const Grid& grid) { return 2.0 * std::numbers::pi / grid.length(); }

// Wavenumber used by odd multipliers: Nyquist components count as zero.
double odd_wavenumber(const Grid& grid, int k) { return grid.is_nyquist(k) ? 0.0 : double(k); }

// (i a) * c without going through the generic complex product.
Complex times_i(double a, Complex c) { return Complex(-a * c.imag(), a * c.real()); }

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha out of (0,1)");
}

}  // namespace

double lambda_multiplier(const Grid& grid, const Index& k, double s) {
  const double k2 = squared_norm(grid, k);
  if (k2 == 0.0) return s == 0.0 ? 1.0 : 0.0;
  return std::pow(frequency_unit(grid) * std::sqrt(k2), s);
}

SpectralField fractional_laplacian(const SpectralField& spectrum, double s) {
  SpectralField out(spectrum.grid());
  const Grid& grid = spectrum.grid();
  const Complex* in = spectrum.data();
  Complex* dst = out.data();
  for_each_mode(grid, [&](std::size_t i, const Index& k, double) { dst[i] = lambda_multiplier(grid, k, s) * in[i]; });
  return out;
}

SpectralVector gradient(const SpectralField& spectrum) {
  const Grid& grid = spectrum.grid();
  SpectralVector out = make_spectral_vector(grid);
  const double unit = frequency_unit(grid);
  const Complex* in = spectrum.data();
  for_each_mode(grid, [&](std::size_t i, const Index& k, double) {
    for (int j = 0; j < grid.dimension(); ++j) out[j].data()[i] = times_i(unit * odd_wavenumber(grid, k[j]), in[i]);
  });
  return out;
}

SpectralField divergence(const SpectralVector& field) {
  const Grid& grid = field.grid();
  SpectralField out(grid);
  const double unit = frequency_unit(grid);
  Complex* dst = out.data();
  for_each_mode(grid, [&](std::size_t i, const Index& k, double) {
    Complex sum{};
    for (int j = 0; j < grid.dimension(); ++j) sum += times_i(unit * odd_wavenumber(grid, k[j]), field[j].data()[i]);
    dst[i] = sum;
  });
  return out;
}

SpectralVector velocity_gradient_type(const SpectralField& theta_hat, double alpha) {
  check_alpha(alpha);
  const Grid& grid = theta_hat.grid();
  SpectralVector out = make_spectral_vector(grid);
  const double unit = frequency_unit(grid);
  const Complex* in = theta_hat.data();
  for_each_mode(grid, [&](std::size_t i, const Index& k, double) {
    const double potential = lambda_multiplier(grid, k, -2.0 + 2.0 * alpha);
    for (int j = 0; j < grid.dimension(); ++j)
      out[j].data()[i] = times_i(unit * odd_wavenumber(grid, k[j]) * potential, in[i]);
  });
  return out;
}

SpectralVector velocity_perp_type(const SpectralField& theta_hat, double alpha) {
  check_alpha(alpha);
  const Grid& grid = theta_hat.grid();
  if (grid.dimension() != 2) throw std::invalid_argument("perp velocity requires dimension 2");
  SpectralVector out = make_spectral_vector(grid);
  const double unit = frequency_unit(grid);
  const Complex* in = theta_hat.data();
  for_each_mode(grid, [&](std::size_t i, const Index& k, double) {
    const double potential = lambda_multiplier(grid, k, -2.0 + 2.0 * alpha);
    out[0].data()[i] = times_i(unit * odd_wavenumber(grid, k[1]) * potential, in[i]);
    out[1].data()[i] = times_i(-unit * odd_wavenumber(grid, k[0]) * potential, in[i]);
  });
  return out;
}

RieszTensor riesz_tensor_lambda2alpha(const SpectralField& theta_hat, double alpha) {
  check_alpha(alpha);
  const Grid& grid = theta_hat.grid();
  const int n = grid.dimension();
  std::vector<SpectralField> entries(static_cast<std::size_t>(n * n), SpectralField(grid));
  const Complex* in = theta_hat.data();
  for_each_mode(grid, [&](std::size_t i, const Index& k, double) {
    const double k2 = squared_norm(grid, k);
    if (k2 == 0.0) return;
    const double lam = lambda_multiplier(grid, k, 2.0 * alpha);
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        // Diagonal entries are even in k_j; off-diagonal ones are odd in each factor.
        const double kj = j == l ? double(k[j]) : odd_wavenumber(grid, k[j]);
        const double kl = j == l ? double(k[l]) : odd_wavenumber(grid, k[l]);
        entries[static_cast<std::size_t>(j * n + l)].data()[i] = (-(kj * kl) / k2 * lam) * in[i];
      }
    }
  });
  return RieszTensor(n, std::move(entries));
}

void dealias(SpectralField& spectrum) {
  const Grid& grid = spectrum.grid();
  Complex* data = spectrum.data();
  for_each_mode(grid, [&](std::size_t i, const Index& k, double) {
    if (!grid.in_dealiased_band(k)) data[i] = Complex{};
  });
}

}  // namespace nlt

#pragma once

#include <vector>

#include "nlt/field.hpp"

namespace nlt {

// Fourier multipliers. With the forward transform exp(-2 pi i x.xi) the
// derivative d/dx_j is 2 pi i k_j / L and Lambda^s = (-Delta)^{s/2} is
// (2 pi |k| / L)^s, so Lambda^2 = -Delta holds exactly. Odd multipliers
// vanish on Nyquist components (|k_j| = N/2), whose sign is ambiguous.

/// Lambda^s. The zero mode is multiplied by 0 whenever s != 0.
SpectralField fractional_laplacian(const SpectralField& spectrum, double s);

/// Component j carries 2 pi i k_j / L.
SpectralVector gradient(const SpectralField& spectrum);

/// sum_j 2 pi i k_j / L v_j.
SpectralField divergence(const SpectralVector& field);

/// u = grad Lambda^{-2+2 alpha} theta, zero mode 0. div u = -Lambda^{2 alpha} theta
/// holds coefficientwise for spectra without Nyquist content.
SpectralVector velocity_gradient_type(const SpectralField& theta_hat, double alpha);

/// u = (d_2, -d_1) Lambda^{-2+2 alpha} theta. Two dimensions only.
SpectralVector velocity_perp_type(const SpectralField& theta_hat, double alpha);

/// (R (x) R) Lambda^{2 alpha} theta: entry (j,l) has multiplier
/// -(k_j k_l / |k|^2) (2 pi |k| / L)^{2 alpha}.
class RieszTensor {
 public:
  RieszTensor(int dimension, std::vector<SpectralField> entries)
      : dimension_(dimension), entries_(std::move(entries)) {}
  int dimension() const { return dimension_; }
  const SpectralField& operator()(int j, int l) const { return entries_[static_cast<std::size_t>(j * dimension_ + l)]; }

 private:
  int dimension_;
  std::vector<SpectralField> entries_;
};

RieszTensor riesz_tensor_lambda2alpha(const SpectralField& theta_hat, double alpha);

/// Zeroes every mode with some |k_j| > N/3 (2/3 rule).
void dealias(SpectralField& spectrum);

/// (2 pi |k| / L)^s with 0 at k = 0 for s != 0.
double lambda_multiplier(const Grid& grid, const Index& k, double s);

}  // namespace nlt

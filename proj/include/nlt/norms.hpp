#pragma once

#include "nlt/field.hpp"

namespace nlt {

/// Integral norms of a sampled field.
///
/// Physical-space sums run sequentially in row-major sample order and
/// spectral sums in half-spectrum storage order, so repeated evaluations are
/// bit-identical.
struct Norms {
  double l1 = 0.0;           ///< (L/N)^n sum |f|
  double l1_positive = 0.0;  ///< (L/N)^n sum max(f, 0)
  double l2 = 0.0;
  double linf = 0.0;
  double hdot_alpha_sq = 0.0;  ///< sum_k (2 pi |k|/L)^{2 alpha} |c_k|^2 / L^n
};

Norms norms(const PhysicalField& field, double alpha);

/// ||Lambda^alpha f||_{L^2}^2 from a spectrum.
double hdot_squared(const SpectralField& spectrum, double alpha);

/// sum_k |c_k|^2 / L^n, the Parseval form of ||f||_{L^2}^2.
double spectral_l2_squared(const SpectralField& spectrum);

/// (L/N)^n sum f.
double integral(const PhysicalField& field);

/// (L/N)^n sum max(f, 0).
double positive_integral(const PhysicalField& field);

/// max |f| over samples.
double sup_norm(const PhysicalField& field);

/// sqrt((L/N)^n sum (f - g)^2).
double l2_distance(const PhysicalField& f, const PhysicalField& g);

}  // namespace nlt

#pragma once

#include "nlt/field.hpp"

namespace nlt {

/// One time-stamped row of the monitored functionals.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;           ///< (L/N)^n sum theta
  double mass_positive = 0.0;  ///< (L/N)^n sum max(theta, 0)
  double maximum = 0.0;        ///< max of the trigonometric interpolant
  double minimum = 0.0;        ///< min of the trigonometric interpolant
  double hdot_alpha_sq = 0.0;
  double grad_inf = 0.0;             ///< max over samples of |grad theta|
  double criterion_integrand = 0.0;  ///< max over entries and samples of |(R (x) R) Lambda^{2 alpha} theta|
  double tail_fraction = 0.0;

  bool operator==(const DiagnosticsRecord&) const = default;
};

/// Evaluates every functional except tail_fraction, which belongs to the
/// nonlinear term and is passed in. theta must be the samples of theta_hat.
DiagnosticsRecord measure(const SpectralField& theta_hat, const PhysicalField& theta, double alpha, double t,
                          double tail_fraction);

/// max over samples of the Euclidean norm of a vector field.
double max_magnitude(const PhysicalVector& v);

}  // namespace nlt

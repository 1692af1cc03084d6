#pragma once

#include "nlt/field.hpp"

namespace nlt {

// Real-space quadrature of the singular-integral forms of Lambda^s and of the
// velocity. Slow (O(N^{2n})) oracles for cross-checking the Fourier path on
// fields supported well inside the box.
//
// The field is the periodic extension of the samples, so the integral over
// R^n becomes a lattice sum with the periodised kernel
// G(j) = h^n sum_p K(h j - L p). Images with |p| <= P are summed directly and
// the rest through their Taylor expansion, whose lattice sums are
// differences of Epstein zeta values. The excluded cell |x - y| < h/2 gets a
// local correction: the leading Taylor term of the integrand is homogeneous
// of degree -q, and the gap between its punctured lattice sum and its
// integral is h^{n-q} Z(q).

/// Lambda^s f(x) = C_{n,s} P.V. int (f(x) - f(y)) |x - y|^{-n-s} dy, 0 < s < 2.
/// Throws std::invalid_argument for s outside (0, 2); warns when more than
/// 1e-8 of the L1 mass lies within L/8 of the box faces.
PhysicalField singular_integral_lambda(const PhysicalField& f, double s);

/// u(x) = C_{n,alpha} P.V. int (x - y) |x - y|^{-n-2 alpha} theta(y) dy. Warns
/// like singular_integral_lambda.
PhysicalVector kernel_velocity(const PhysicalField& theta, double alpha);

/// Share of the L1 mass within L/8 of the box faces.
double boundary_mass_fraction(const PhysicalField& f);

}  // namespace nlt

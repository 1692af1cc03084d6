#pragma once

namespace nlt {

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Surface area of the unit sphere S^{n-1}.
double unit_sphere_area(int n);

/// Kernel constant of the velocity u = grad Lambda^{-2+2 alpha} theta written as
/// the principal value  C int (x - y) |x - y|^{-n-2 alpha} theta(y) dy,
/// C = (2 - 2 alpha - n) Gamma(n/2 - 1 + alpha) / (pi^{n/2} 2^{2-2 alpha} Gamma(1 - alpha)).
/// Evaluated as -Gamma(n/2 + alpha) / (pi^{n/2} 2^{1-2 alpha} Gamma(1 - alpha)),
/// which is the same number and stays finite at n = 1.
double velocity_kernel_constant(int n, double alpha);

/// C_{n,s} = 2^s Gamma((n+s)/2) / (pi^{n/2} |Gamma(-s/2)|), the constant of
/// Lambda^s f(x) = C P.V. int (f(x) - f(y)) |x - y|^{-n-s} dy for 0 < s < 2.
double singular_integral_constant(int n, double s);

/// 2^{1/2} omega_n^{alpha/(n+2 alpha)}, the constant of
/// ||f||_2 <= C ||f||_1^{2 alpha/(n+2 alpha)} ||f||_{Hdot^alpha}^{n/(n+2 alpha)}.
double interpolation_constant(int n, double alpha);

/// Small-mass threshold 2^{-(n+alpha)(n+2 alpha)/(2 alpha^2)} / C^{(n+2 alpha)/(2 alpha)}
/// with C = interpolation_constant(n, alpha).
double smallness_epsilon0(int n, double alpha);

/// Epstein zeta function sum over m in Z^n \ {0} of |m|^{-p}, analytically
/// continued to every p except the pole p = n.
double lattice_zeta(int n, double p);

}  // namespace nlt

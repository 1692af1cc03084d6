#pragma once

#include <array>
#include <span>
#include <vector>

#include "nlt/field.hpp"

namespace nlt {

/// Value, gradient and Hessian of a trigonometric interpolant at one point.
struct LocalExpansion {
  double value = 0.0;
  std::array<double, kMaxDimension> gradient{};
  std::array<std::array<double, kMaxDimension>, kMaxDimension> hessian{};
};

/// Evaluates the band-limited interpolant (1/L^n) sum_k c_k exp(2 pi i k.x / L)
/// of a spectrum at arbitrary points. Exact for band-limited fields; each
/// evaluation costs O(N^n).
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const SpectralField& spectrum) : spectrum_(&spectrum) {}

  double value(const Point& x) const;
  LocalExpansion expand(const Point& x) const;

 private:
  template <bool WithDerivatives>
  LocalExpansion evaluate(const Point& x) const;

  const SpectralField* spectrum_;
};

/// Evaluates every component of a vector spectrum at x.
std::array<double, kMaxDimension> interpolate(const SpectralVector& field, const Point& x);

struct Extremum {
  Point location{};
  double value = 0.0;
};

/// Maximum of the interpolant: grid candidates refined by Newton's method on
/// the gradient. Never below the largest sample.
Extremum refined_maximum(const SpectralField& spectrum, const PhysicalField& samples);
/// Minimum counterpart of refined_maximum.
Extremum refined_minimum(const SpectralField& spectrum, const PhysicalField& samples);

/// Wraps each active coordinate of x into [0, L).
Point wrap_point(const Grid& grid, Point x);

}  // namespace nlt

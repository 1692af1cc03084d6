#pragma once

#include <array>
#include <cstddef>
#include <cstdlib>

namespace nlt {

inline constexpr int kMaxDimension = 3;

/// Integer multi-index; axes beyond the grid dimension are zero.
using Index = std::array<int, kMaxDimension>;
/// Point in the box; axes beyond the grid dimension are ignored.
using Point = std::array<double, kMaxDimension>;

/// Uniform periodic lattice on [0, L)^n.
///
/// Samples sit at x_j = (j/N) L componentwise. The wavevector lattice is
/// {-N/2, ..., N/2-1}^n with physical frequency k/L. Spectra are stored as
/// the FFTW half spectrum: the last axis keeps indices 0..N/2 only.
class Grid {
 public:
  Grid(int dimension, int resolution, double length);

  int dimension() const { return dimension_; }
  int resolution() const { return resolution_; }
  double length() const { return length_; }

  /// Number of real samples, N^n.
  std::size_t size() const { return size_; }
  /// Number of stored complex coefficients, N^(n-1) (N/2 + 1).
  std::size_t spectral_size() const { return spectral_size_; }
  /// Extent of the last (halved) spectral axis.
  int half_extent() const { return resolution_ / 2 + 1; }

  double spacing() const { return length_ / resolution_; }
  double cell_volume() const;
  double volume() const;

  /// Signed wavenumber of a full-axis index (index N/2 maps to -N/2).
  int wavenumber(int index) const { return index < resolution_ / 2 ? index : index - resolution_; }
  bool is_nyquist(int k) const { return std::abs(k) == resolution_ / 2; }
  /// True when every |k_j| <= N/3, the band kept by the 2/3 rule.
  bool in_dealiased_band(const Index& k) const;

  double coordinate(int index) const { return index * spacing(); }

  bool operator==(const Grid&) const = default;

 private:
  int dimension_;
  int resolution_;
  double length_;
  std::size_t size_;
  std::size_t spectral_size_;
};

/// Visits every stored coefficient of the half spectrum in storage order.
///
/// fn(offset, k, weight): k holds signed wavenumbers (the last axis runs
/// 0..N/2), weight is the multiplicity of the stored coefficient in the full
/// Hermitian lattice, 1 on the k_last = 0 and k_last = N/2 planes, else 2.
template <class Fn>
void for_each_mode(const Grid& grid, Fn&& fn) {
  const int n = grid.dimension();
  const int full = grid.resolution();
  const int half = grid.half_extent();
  const int outer0 = n >= 2 ? full : 1;
  const int outer1 = n >= 3 ? full : 1;
  std::size_t offset = 0;
  for (int a = 0; a < outer0; ++a) {
    for (int b = 0; b < outer1; ++b) {
      for (int c = 0; c < half; ++c, ++offset) {
        Index k{0, 0, 0};
        if (n == 1) {
          k[0] = c;
        } else if (n == 2) {
          k[0] = grid.wavenumber(a);
          k[1] = c;
        } else {
          k[0] = grid.wavenumber(a);
          k[1] = grid.wavenumber(b);
          k[2] = c;
        }
        const double weight = (c == 0 || c == half - 1) ? 1.0 : 2.0;
        fn(offset, k, weight);
      }
    }
  }
}

/// Visits every real sample in row-major order: fn(offset, index).
template <class Fn>
void for_each_point(const Grid& grid, Fn&& fn) {
  const int n = grid.dimension();
  const int full = grid.resolution();
  const int e0 = full;
  const int e1 = n >= 2 ? full : 1;
  const int e2 = n >= 3 ? full : 1;
  std::size_t offset = 0;
  for (int a = 0; a < e0; ++a)
    for (int b = 0; b < e1; ++b)
      for (int c = 0; c < e2; ++c, ++offset) fn(offset, Index{a, b, c});
}

/// Row-major offset of a sample index (components reduced modulo N).
std::size_t point_offset(const Grid& grid, const Index& index);

/// |k|^2 over the active axes.
inline double squared_norm(const Grid& grid, const Index& k) {
  double s = 0.0;
  for (int j = 0; j < grid.dimension(); ++j) s += double(k[j]) * double(k[j]);
  return s;
}

}  // namespace nlt

#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <stdexcept>
#include <vector>

#include "nlt/grid.hpp"

namespace nlt {

using Complex = std::complex<double>;

namespace detail {
void* fft_aligned_alloc(std::size_t bytes);
void fft_aligned_free(void* p) noexcept;
}  // namespace detail

/// Allocator returning SIMD-aligned storage so buffers can be handed to FFTW
/// plans created on other buffers.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
  T* allocate(std::size_t count) {
    void* p = detail::fft_aligned_alloc(count * sizeof(T));
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { detail::fft_aligned_free(p); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using RealBuffer = std::vector<double, AlignedAllocator<double>>;
using ComplexBuffer = std::vector<Complex, AlignedAllocator<Complex>>;

/// Real scalar sampled on the grid, row-major.
class PhysicalField {
 public:
  explicit PhysicalField(const Grid& grid);
  PhysicalField(const Grid& grid, std::span<const double> values);

  const Grid& grid() const { return grid_; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(const Index& index) const { return values_[point_offset(grid_, index)]; }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::size_t size() const { return values_.size(); }

  bool all_finite() const;

 private:
  Grid grid_;
  RealBuffer values_;
};

/// Fourier coefficients of a real field, normalised so that
/// coeff(0) = (L/N)^n * sum(values), i.e. an approximation of the integral.
///
/// Storage is the half spectrum (see Grid); coeff() presents the full
/// Hermitian lattice.
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::span<Complex> coefficients() { return coeffs_; }
  std::span<const Complex> coefficients() const { return coeffs_; }
  Complex* data() { return coeffs_.data(); }
  const Complex* data() const { return coeffs_.data(); }
  std::size_t size() const { return coeffs_.size(); }

  /// Coefficient of any wavevector; components are reduced modulo N.
  Complex coeff(const Index& k) const;
  /// Sets coeff(k) and its partner coeff(-k) = conj(value). A self-conjugate
  /// k keeps only the real part.
  void set_mode(const Index& k, Complex value);

  /// max |c(k) - conj(c(-k))| / max |c| over the self-conjugate planes
  /// (0 for an exactly Hermitian or zero spectrum).
  double hermitian_defect() const;
  /// Projects the self-conjugate planes onto their Hermitian part.
  void enforce_hermitian();

  void set_zero();

 private:
  std::size_t stored_offset(const Index& reduced) const;

  Grid grid_;
  ComplexBuffer coeffs_;
};

/// n components on one grid.
template <class Field>
struct VectorField {
  std::vector<Field> components;

  const Grid& grid() const { return components.front().grid(); }
  int dimension() const { return static_cast<int>(components.size()); }
  Field& operator[](int j) { return components[j]; }
  const Field& operator[](int j) const { return components[j]; }
};

using PhysicalVector = VectorField<PhysicalField>;
using SpectralVector = VectorField<SpectralField>;

PhysicalVector make_physical_vector(const Grid& grid);
SpectralVector make_spectral_vector(const Grid& grid);

}  // namespace nlt

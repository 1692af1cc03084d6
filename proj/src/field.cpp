#include "nlt/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>

namespace nlt {

namespace detail {
void* fft_aligned_alloc(std::size_t bytes) { return fftw_malloc(bytes == 0 ? 1 : bytes); }
void fft_aligned_free(void* p) noexcept { fftw_free(p); }
}  // namespace detail

PhysicalField::PhysicalField(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

PhysicalField::PhysicalField(const Grid& grid, std::span<const double> values)
    : grid_(grid), values_(values.begin(), values.end()) {
  if (values.size() != grid.size())
    throw std::invalid_argument("field sample count does not match grid size");
}

bool PhysicalField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

SpectralField::SpectralField(const Grid& grid) : grid_(grid), coeffs_(grid.spectral_size(), Complex{}) {}

void SpectralField::set_zero() { std::fill(coeffs_.begin(), coeffs_.end(), Complex{}); }

namespace {

Index reduce(const Grid& grid, const Index& k) {
  const int full = grid.resolution();
  Index r{0, 0, 0};
  for (int j = 0; j < grid.dimension(); ++j) {
    r[j] = k[j] % full;
    if (r[j] < 0) r[j] += full;
  }
  return r;
}

Index negate(const Grid& grid, const Index& reduced) {
  const int full = grid.resolution();
  Index r{0, 0, 0};
  for (int j = 0; j < grid.dimension(); ++j) r[j] = (full - reduced[j]) % full;
  return r;
}

}  // namespace

std::size_t SpectralField::stored_offset(const Index& r) const {
  const int n = grid_.dimension();
  const auto full = static_cast<std::size_t>(grid_.resolution());
  const auto half = static_cast<std::size_t>(grid_.half_extent());
  std::size_t offset = 0;
  for (int j = 0; j < n - 1; ++j) offset = offset * full + static_cast<std::size_t>(r[j]);
  return offset * half + static_cast<std::size_t>(r[n - 1]);
}

Complex SpectralField::coeff(const Index& k) const {
  const Index r = reduce(grid_, k);
  const int last = grid_.dimension() - 1;
  if (r[last] <= grid_.resolution() / 2) return coeffs_[stored_offset(r)];
  return std::conj(coeffs_[stored_offset(negate(grid_, r))]);
}

void SpectralField::set_mode(const Index& k, Complex value) {
  const Index r = reduce(grid_, k);
  const Index partner = negate(grid_, r);
  const int last = grid_.dimension() - 1;
  if (r == partner) {
    coeffs_[stored_offset(r)] = Complex(value.real(), 0.0);
    return;
  }
  if (r[last] <= grid_.resolution() / 2) coeffs_[stored_offset(r)] = value;
  if (partner[last] <= grid_.resolution() / 2) coeffs_[stored_offset(partner)] = std::conj(value);
}

namespace {

// Calls fn(offset, partner_offset) for every stored coefficient on the
// self-conjugate planes k_last = 0 and k_last = N/2.
template <class Fn>
void for_each_self_conjugate(const Grid& grid, Fn&& fn) {
  const int n = grid.dimension();
  const int full = grid.resolution();
  const auto half = static_cast<std::size_t>(grid.half_extent());
  const int outer0 = n >= 2 ? full : 1;
  const int outer1 = n >= 3 ? full : 1;
  for (int plane : {0, full / 2}) {
    for (int a = 0; a < outer0; ++a) {
      for (int b = 0; b < outer1; ++b) {
        const int pa = (full - a) % full;
        const int pb = (full - b) % full;
        std::size_t row = 0, prow = 0;
        if (n == 2) {
          row = static_cast<std::size_t>(a);
          prow = static_cast<std::size_t>(pa);
        } else if (n == 3) {
          row = static_cast<std::size_t>(a) * full + static_cast<std::size_t>(b);
          prow = static_cast<std::size_t>(pa) * full + static_cast<std::size_t>(pb);
        }
        fn(row * half + static_cast<std::size_t>(plane), prow * half + static_cast<std::size_t>(plane));
      }
    }
  }
}

}  // namespace

double SpectralField::hermitian_defect() const {
  double scale = 0.0;
  for (const Complex& c : coeffs_) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double defect = 0.0;
  for_each_self_conjugate(grid_, [&](std::size_t i, std::size_t p) {
    defect = std::max(defect, std::abs(coeffs_[i] - std::conj(coeffs_[p])));
  });
  return defect / scale;
}

void SpectralField::enforce_hermitian() {
  for_each_self_conjugate(grid_, [&](std::size_t i, std::size_t p) {
    if (i == p) {
      coeffs_[i] = Complex(coeffs_[i].real(), 0.0);
    } else if (i < p) {
      const Complex avg = 0.5 * (coeffs_[i] + std::conj(coeffs_[p]));
      coeffs_[i] = avg;
      coeffs_[p] = std::conj(avg);
    }
  });
}

PhysicalVector make_physical_vector(const Grid& grid) {
  PhysicalVector v;
  v.components.assign(static_cast<std::size_t>(grid.dimension()), PhysicalField(grid));
  return v;
}

SpectralVector make_spectral_vector(const Grid& grid) {
  SpectralVector v;
  v.components.assign(static_cast<std::size_t>(grid.dimension()), SpectralField(grid));
  return v;
}

}  // namespace nlt

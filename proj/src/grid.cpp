#include "nlt/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlt {

Grid::Grid(int dimension, int resolution, double length)
    : dimension_(dimension), resolution_(resolution), length_(length) {
  if (dimension < 1 || dimension > kMaxDimension)
    throw std::invalid_argument("grid dimension must be 1, 2 or 3, got " + std::to_string(dimension));
  if (resolution < 4 || resolution % 2 != 0)
    throw std::invalid_argument("grid resolution must be even and >= 4, got " + std::to_string(resolution));
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid length must be positive and finite");
  size_ = 1;
  for (int j = 0; j < dimension; ++j) size_ *= static_cast<std::size_t>(resolution);
  spectral_size_ = size_ / static_cast<std::size_t>(resolution) * static_cast<std::size_t>(half_extent());
}

double Grid::cell_volume() const { return std::pow(spacing(), dimension_); }

double Grid::volume() const { return std::pow(length_, dimension_); }

bool Grid::in_dealiased_band(const Index& k) const {
  for (int j = 0; j < dimension_; ++j)
    if (3 * std::abs(k[j]) > resolution_) return false;
  return true;
}

std::size_t point_offset(const Grid& grid, const Index& index) {
  const int full = grid.resolution();
  std::size_t offset = 0;
  for (int j = 0; j < grid.dimension(); ++j) {
    int i = index[j] % full;
    if (i < 0) i += full;
    offset = offset * static_cast<std::size_t>(full) + static_cast<std::size_t>(i);
  }
  return offset;
}

}  // namespace nlt

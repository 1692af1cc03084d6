#pragma once

#include <stdexcept>
#include <string>

#include "nlt/field.hpp"

namespace nlt {

/// Raised when a spectrum handed to the inverse transform is not the
/// spectrum of a real field.
class HermitianError : public std::domain_error {
 public:
  explicit HermitianError(const std::string& what) : std::domain_error(what) {}
};

/// Discrete analogue of f^(xi) = int exp(-2 pi i x.xi) f dx at xi = k/L.
/// The self-conjugate planes are projected onto their Hermitian part so the
/// result is exactly Hermitian.
SpectralField forward_transform(const PhysicalField& field);

/// Inverse of forward_transform. Throws HermitianError when
/// hermitian_defect() exceeds kHermitianTolerance.
PhysicalField inverse_transform(const SpectralField& spectrum);

inline constexpr double kHermitianTolerance = 1e-12;

namespace detail {
/// Unchecked variants writing into preallocated outputs (solver hot path).
void forward_into(const PhysicalField& field, SpectralField& out);
void inverse_into(const SpectralField& spectrum, PhysicalField& out);
}  // namespace detail

}  // namespace nlt

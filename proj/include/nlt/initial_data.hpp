#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nlt/field.hpp"

namespace nlt {

enum class InitialKind { gaussian, smooth_bump, dipole, random_bandlimited };

std::string to_string(InitialKind k);
InitialKind parse_initial_kind(const std::string& text);

/// Parameters of every kind; each kind reads only its own.
struct InitialData {
  InitialKind kind = InitialKind::gaussian;
  double A = 1.0;
  double sigma = 0.0;   ///< gaussian and dipole width; 0 means L/20
  double radius = 0.0;  ///< smooth_bump support radius; 0 means L/4
  std::optional<Point> center;  ///< defaults to the box centre
  double separation = 0.0;      ///< dipole bump distance along axis 0; 0 means 4 sigma
  int k_cut = 4;
  double amplitude = 1.0;  ///< random_bandlimited sup norm
  std::uint64_t seed = 1;

  void validate(const Grid& grid) const;
};

/// gaussian: A exp(-|x-c|^2 / (2 sigma^2)).
/// smooth_bump: A e exp(-1/(1 - |x-c|^2/r^2)) for |x-c| < r, else 0 (peak A).
/// dipole: A (g(x - c - d/2 e_0) - g(x - c + d/2 e_0)) with g the unit gaussian.
/// random_bandlimited: Gaussian random coefficients on 0 < |k|_inf <= k_cut
/// (mt19937_64), zero mean, rescaled to sup |theta| = amplitude.
/// Distances use the nearest periodic image.
PhysicalField make_initial(const Grid& grid, const InitialData& data);

}  // namespace nlt

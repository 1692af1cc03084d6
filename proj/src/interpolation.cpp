#include "nlt/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlt {

namespace {

struct PhaseTables {
  // tables[j][index] = exp(2 pi i k x_j / L) for the wavenumber stored at index.
  std::array<std::vector<Complex>, kMaxDimension> tables;
  std::array<std::vector<double>, kMaxDimension> wavenumbers;  // Nyquist reported as 0
};

PhaseTables make_tables(const Grid& grid, const Point& x) {
  PhaseTables t;
  const int n = grid.dimension();
  const double unit = 2.0 * std::numbers::pi / grid.length();
  for (int j = 0; j < n; ++j) {
    const bool last = j == n - 1;
    const int extent = last ? grid.half_extent() : grid.resolution();
    t.tables[j].resize(static_cast<std::size_t>(extent));
    t.wavenumbers[j].resize(static_cast<std::size_t>(extent));
    for (int a = 0; a < extent; ++a) {
      const int k = last ? a : grid.wavenumber(a);
      t.tables[j][static_cast<std::size_t>(a)] = std::polar(1.0, unit * k * x[j]);
      t.wavenumbers[j][static_cast<std::size_t>(a)] = grid.is_nyquist(k) ? 0.0 : double(k);
    }
  }
  return t;
}

}  // namespace

template <bool WithDerivatives>
LocalExpansion TrigInterpolant::evaluate(const Point& x) const {
  const Grid& grid = spectrum_->grid();
  const int n = grid.dimension();
  const PhaseTables t = make_tables(grid, x);
  const Complex* c = spectrum_->data();
  const int full = grid.resolution();
  const int half = grid.half_extent();
  const int outer0 = n >= 2 ? full : 1;
  const int outer1 = n >= 3 ? full : 1;

  // Accumulate sum w c e^{i phi} k^beta for |beta| <= 2 over the half spectrum.
  Complex v{};
  std::array<Complex, kMaxDimension> g{};
  std::array<std::array<Complex, kMaxDimension>, kMaxDimension> h{};
  std::size_t offset = 0;
  for (int a = 0; a < outer0; ++a) {
    for (int b = 0; b < outer1; ++b) {
      Complex outer(1.0, 0.0);
      std::array<double, kMaxDimension> kk{};
      if (n >= 2) {
        outer = t.tables[0][static_cast<std::size_t>(a)];
        kk[0] = t.wavenumbers[0][static_cast<std::size_t>(a)];
      }
      if (n >= 3) {
        outer *= t.tables[1][static_cast<std::size_t>(b)];
        kk[1] = t.wavenumbers[1][static_cast<std::size_t>(b)];
      }
      const std::vector<Complex>& inner = t.tables[n - 1];
      const std::vector<double>& inner_k = t.wavenumbers[n - 1];
      for (int cidx = 0; cidx < half; ++cidx, ++offset) {
        const double weight = (cidx == 0 || cidx == half - 1) ? 1.0 : 2.0;
        const Complex term = weight * c[offset] * outer * inner[static_cast<std::size_t>(cidx)];
        v += term;
        if constexpr (WithDerivatives) {
          kk[n - 1] = inner_k[static_cast<std::size_t>(cidx)];
          for (int j = 0; j < n; ++j) {
            g[j] += kk[j] * term;
            for (int l = j; l < n; ++l) h[j][l] += kk[j] * kk[l] * term;
          }
        }
      }
    }
  }

  LocalExpansion out;
  const double inv_volume = 1.0 / grid.volume();
  const double unit = 2.0 * std::numbers::pi / grid.length();
  out.value = v.real() * inv_volume;
  if constexpr (WithDerivatives) {
    for (int j = 0; j < n; ++j) {
      // d/dx_j brings i unit k_j: Re(i z) = -Im(z).
      out.gradient[j] = -unit * g[j].imag() * inv_volume;
      for (int l = j; l < n; ++l) {
        out.hessian[j][l] = -unit * unit * h[j][l].real() * inv_volume;
        out.hessian[l][j] = out.hessian[j][l];
      }
    }
  }
  return out;
}

double TrigInterpolant::value(const Point& x) const { return evaluate<false>(x).value; }

LocalExpansion TrigInterpolant::expand(const Point& x) const { return evaluate<true>(x); }

std::array<double, kMaxDimension> interpolate(const SpectralVector& field, const Point& x) {
  std::array<double, kMaxDimension> out{};
  for (int j = 0; j < field.dimension(); ++j) out[j] = TrigInterpolant(field[j]).value(x);
  return out;
}

Point wrap_point(const Grid& grid, Point x) {
  const double length = grid.length();
  for (int j = 0; j < grid.dimension(); ++j) {
    x[j] = std::fmod(x[j], length);
    if (x[j] < 0.0) x[j] += length;
    if (x[j] >= length) x[j] = 0.0;
  }
  return x;
}

namespace {

// Solves A d = b for a small dense system by Gaussian elimination with
// partial pivoting; returns false when A is numerically singular.
bool solve_small(int n, std::array<std::array<double, kMaxDimension>, kMaxDimension> a,
                 std::array<double, kMaxDimension> b, std::array<double, kMaxDimension>& d) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int cc = col; cc < n; ++cc) a[r][cc] -= f * a[col][cc];
      b[r] -= f * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int cc = r + 1; cc < n; ++cc) s -= a[r][cc] * d[cc];
    d[r] = s / a[r][r];
  }
  return true;
}

// Largest (sign = +1) or smallest (sign = -1) samples that are extremal
// among their axial neighbours.
std::vector<std::size_t> extremal_candidates(const PhysicalField& samples, double sign, std::size_t count) {
  const Grid& grid = samples.grid();
  const int n = grid.dimension();
  std::vector<std::size_t> found;
  for_each_point(grid, [&](std::size_t offset, const Index& idx) {
    const double v = sign * samples[offset];
    for (int j = 0; j < n; ++j) {
      for (int step : {-1, 1}) {
        Index nb = idx;
        nb[j] += step;
        if (sign * samples.at(nb) > v) return;
      }
    }
    found.push_back(offset);
  });
  std::sort(found.begin(), found.end(), [&](std::size_t a, std::size_t b) {
    const double va = sign * samples[a], vb = sign * samples[b];
    return va != vb ? va > vb : a < b;
  });
  if (found.size() > count) found.resize(count);
  return found;
}

Point sample_position(const Grid& grid, std::size_t offset) {
  Point x{};
  const auto full = static_cast<std::size_t>(grid.resolution());
  for (int j = grid.dimension() - 1; j >= 0; --j) {
    x[j] = grid.coordinate(static_cast<int>(offset % full));
    offset /= full;
  }
  return x;
}

Extremum refine(const SpectralField& spectrum, const PhysicalField& samples, double sign) {
  const Grid& grid = spectrum.grid();
  const int n = grid.dimension();
  const TrigInterpolant interp(spectrum);
  const double h = grid.spacing();

  Extremum best;
  best.value = -INFINITY;
  const std::vector<std::size_t> candidates = extremal_candidates(samples, sign, 3);
  if (candidates.empty()) {
    // Flat field: every sample ties.
    best.value = samples.size() ? samples[0] : 0.0;
    return best;
  }
  for (std::size_t cand : candidates) {
    Point x = sample_position(grid, cand);
    double fx = sign * samples[cand];
    for (int iter = 0; iter < 12; ++iter) {
      LocalExpansion e = interp.expand(x);
      std::array<double, kMaxDimension> g{}, d{};
      auto hess = e.hessian;
      for (int j = 0; j < n; ++j) {
        g[j] = -sign * e.gradient[j];
        for (int l = 0; l < n; ++l) hess[j][l] *= sign;
      }
      // Newton step on sign*f: hess d = -grad.
      if (!solve_small(n, hess, g, d)) break;
      double len = 0.0;
      for (int j = 0; j < n; ++j) len += d[j] * d[j];
      len = std::sqrt(len);
      if (!(len < h)) {
        // Far step or saddle direction: move half a cell uphill instead.
        double glen = 0.0;
        for (int j = 0; j < n; ++j) glen += e.gradient[j] * e.gradient[j];
        glen = std::sqrt(glen);
        if (glen == 0.0) break;
        for (int j = 0; j < n; ++j) d[j] = 0.5 * h * sign * e.gradient[j] / glen;
        len = 0.5 * h;
      }
      bool improved = false;
      for (int halving = 0; halving < 8 && !improved; ++halving) {
        Point trial = x;
        for (int j = 0; j < n; ++j) trial[j] += d[j];
        const double ft = sign * interp.value(trial);
        if (ft >= fx) {
          x = trial;
          fx = ft;
          improved = true;
        } else {
          for (int j = 0; j < n; ++j) d[j] *= 0.5;
          len *= 0.5;
        }
      }
      if (!improved || len < 1e-13 * grid.length()) break;
    }
    if (fx > best.value) {
      best.value = fx;
      best.location = wrap_point(grid, x);
    }
  }
  best.value *= sign;
  return best;
}

}  // namespace

Extremum refined_maximum(const SpectralField& spectrum, const PhysicalField& samples) {
  return refine(spectrum, samples, 1.0);
}

Extremum refined_minimum(const SpectralField& spectrum, const PhysicalField& samples) {
  return refine(spectrum, samples, -1.0);
}

}  // namespace nlt

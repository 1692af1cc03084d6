#include "nlt/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nlt/constants.hpp"
#include "nlt/parallel.hpp"
#include "nlt/warnings.hpp"

namespace nlt {

namespace {

constexpr double kBoundaryMassTolerance = 1e-8;

// Kernel values along one line of the offset lattice: fixed offsets on the
// leading axes, the last axis running over [lo, hi]. weights[q][t] belongs to
// m_last = hi - t so the sum over the line is a forward dot product with the
// padded source row.
struct KernelLine {
  std::array<int, 2> outer{};
  int lo = 0;
  int hi = 0;
  std::vector<std::vector<double>> weights;  // one per kernel
};

// Periodised lattice kernel on the fundamental domain j in [-N/2, N/2)^n:
// G_q(j) = h^n sum_{|p| <= P} K_q(h j - L p) (the term h j - L p = 0 is
// skipped) plus far(q, d), the images beyond P. kernel receives the offset d.
template <class KernelFn, class FarFn>
std::vector<KernelLine> periodic_kernel(const Grid& grid, int kernels, int images, KernelFn&& kernel, FarFn&& far) {
  const int n = grid.dimension();
  const int full = grid.resolution();
  const double h = grid.spacing();
  const double length = grid.length();
  const double cell = grid.cell_volume();

  std::vector<Index> shifts;
  const int p1 = n >= 2 ? images : 0;
  const int p2 = n >= 3 ? images : 0;
  for (int a = -images; a <= images; ++a)
    for (int b = -p1; b <= p1; ++b)
      for (int c = -p2; c <= p2; ++c)
        if (a * a + b * b + c * c <= images * images) shifts.push_back({a, b, c});

  const int half = full / 2;
  const int o0 = n >= 2 ? full : 1;
  const int o1 = n >= 3 ? full : 1;
  std::vector<KernelLine> lines(static_cast<std::size_t>(o0 * o1));
  parallel_for(lines.size(), [&](std::size_t li) {
    KernelLine& line = lines[li];
    const int a = static_cast<int>(li) / o1 - (n >= 2 ? half : 0);
    const int b = static_cast<int>(li) % o1 - (n >= 3 ? half : 0);
    line.outer = {a, b};
    line.lo = -half;
    line.hi = half - 1;
    line.weights.assign(static_cast<std::size_t>(kernels), std::vector<double>(static_cast<std::size_t>(full), 0.0));
    std::vector<double> value(static_cast<std::size_t>(kernels));
    for (int t = 0; t < full; ++t) {
      Index j{0, 0, 0};
      const int last = line.hi - t;
      if (n == 1) j = {last, 0, 0};
      if (n == 2) j = {a, last, 0};
      if (n == 3) j = {a, b, last};
      Point d{};
      for (int q = 0; q < n; ++q) d[q] = h * j[q];
      std::fill(value.begin(), value.end(), 0.0);
      for (const Index& p : shifts) {
        Point e{};
        bool origin = true;
        for (int q = 0; q < n; ++q) {
          e[q] = d[q] - length * p[q];
          if (j[q] != 0 || p[q] != 0) origin = false;
        }
        if (origin) continue;
        for (int q = 0; q < kernels; ++q) value[static_cast<std::size_t>(q)] += kernel(e, q);
      }
      for (int q = 0; q < kernels; ++q)
        line.weights[static_cast<std::size_t>(q)][static_cast<std::size_t>(t)] =
            cell * (value[static_cast<std::size_t>(q)] + far(q, d));
    }
  });
  return lines;
}

// sum over 0 < |p| <= P of |p|^{-q}.
double partial_lattice_sum(int n, int images, double q) {
  double s = 0.0;
  const int p1 = n >= 2 ? images : 0;
  const int p2 = n >= 3 ? images : 0;
  for (int a = -images; a <= images; ++a)
    for (int b = -p1; b <= p1; ++b)
      for (int c = -p2; c <= p2; ++c) {
        const int r2 = a * a + b * b + c * c;
        if (r2 == 0 || r2 > images * images) continue;
        s += std::pow(double(r2), -0.5 * q);
      }
  return s;
}

// Image radius giving a few hundred periodic copies per offset.
int image_radius(int n) { return n == 1 ? 150 : (n == 2 ? 8 : 3); }

// Rows of the field along the last axis, each padded periodically to 3N.
struct PaddedRows {
  int resolution;
  std::vector<double> data;
  const double* row(std::size_t r) const { return data.data() + r * 3 * static_cast<std::size_t>(resolution); }
};

PaddedRows pad_rows(const PhysicalField& f) {
  const int full = f.grid().resolution();
  const std::size_t rows = f.size() / static_cast<std::size_t>(full);
  PaddedRows p{full, std::vector<double>(rows * 3 * static_cast<std::size_t>(full))};
  for (std::size_t r = 0; r < rows; ++r)
    for (int c = 0; c < 3 * full; ++c)
      p.data[r * 3 * full + static_cast<std::size_t>(c)] = f[r * full + static_cast<std::size_t>(c % full)];
  return p;
}

double dot(const double* a, const double* b, int count) {
  double s = 0.0;
#pragma omp simd reduction(+ : s)
  for (int i = 0; i < count; ++i) s += a[i] * b[i];
  return s;
}

// out[q][x] = sum over the lines of weight_q(m) f(x - h m) for every sample x.
std::vector<std::vector<double>> lattice_convolution(const PhysicalField& f, const std::vector<KernelLine>& lines,
                                                     int kernels) {
  const Grid& grid = f.grid();
  const int n = grid.dimension();
  const int full = grid.resolution();
  const PaddedRows padded = pad_rows(f);
  const std::size_t rows = f.size() / static_cast<std::size_t>(full);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(kernels), std::vector<double>(f.size(), 0.0));
  auto wrap = [full](int i) { return ((i % full) + full) % full; };
  parallel_for(rows, [&](std::size_t r) {
    // Leading indices of this output row.
    const int i0 = n >= 2 ? static_cast<int>(n == 2 ? r : r / full) : 0;
    const int i1 = n >= 3 ? static_cast<int>(r % full) : 0;
    std::vector<double> acc(static_cast<std::size_t>(kernels) * full, 0.0);
    for (const KernelLine& line : lines) {
      std::size_t source = 0;
      if (n == 2) source = static_cast<std::size_t>(wrap(i0 - line.outer[0]));
      if (n == 3)
        source = static_cast<std::size_t>(wrap(i0 - line.outer[0])) * full + static_cast<std::size_t>(wrap(i1 - line.outer[1]));
      const double* src = padded.row(source);
      const int width = line.hi - line.lo + 1;
      for (int q = 0; q < kernels; ++q) {
        const double* w = line.weights[static_cast<std::size_t>(q)].data();
        double* a = acc.data() + static_cast<std::size_t>(q) * full;
        for (int c = 0; c < full; ++c) a[c] += dot(w, src + full + c - line.hi, width);
      }
    }
    for (int q = 0; q < kernels; ++q)
      for (int c = 0; c < full; ++c)
        out[static_cast<std::size_t>(q)][r * full + static_cast<std::size_t>(c)] = acc[static_cast<std::size_t>(q) * full + c];
  });
  return out;
}

// Fourth-order central differences.
double second_difference(const PhysicalField& f, const Index& idx, int axis, double h) {
  auto at = [&](int shift) {
    Index i = idx;
    i[axis] += shift;
    return f.at(i);
  };
  return (-at(2) + 16.0 * at(1) - 30.0 * at(0) + 16.0 * at(-1) - at(-2)) / (12.0 * h * h);
}

double first_difference(const PhysicalField& f, const Index& idx, int axis, double h) {
  auto at = [&](int shift) {
    Index i = idx;
    i[axis] += shift;
    return f.at(i);
  };
  return (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
}

void check_confinement(const PhysicalField& f, const char* what) {
  const double fraction = boundary_mass_fraction(f);
  if (fraction > kBoundaryMassTolerance) {
    std::ostringstream msg;
    msg << what << ": " << fraction << " of the mass lies near the box faces; far-field error is not controlled";
    warn(msg.str());
  }
}

}  // namespace

double boundary_mass_fraction(const PhysicalField& f) {
  const Grid& grid = f.grid();
  const double margin = grid.length() / 8.0;
  double total = 0.0, frame = 0.0;
  for_each_point(grid, [&](std::size_t offset, const Index& idx) {
    const double v = std::abs(f[offset]);
    total += v;
    for (int j = 0; j < grid.dimension(); ++j) {
      const double x = grid.coordinate(idx[j]);
      if (x < margin || x > grid.length() - margin) {
        frame += v;
        break;
      }
    }
  });
  return total > 0.0 ? frame / total : 0.0;
}

PhysicalField singular_integral_lambda(const PhysicalField& f, double s) {
  if (!(s > 0.0 && s < 2.0)) throw std::invalid_argument("s out of (0,2)");
  check_confinement(f, "singular_integral_lambda");
  const Grid& grid = f.grid();
  const int n = grid.dimension();
  const double h = grid.spacing();
  const double length = grid.length();
  const int images = image_radius(n);

  // Images beyond P: |d - L p|^{-n-s} expanded to second order in d.
  const double q0 = n + s;
  const double far0 = std::pow(length, -q0) * (lattice_zeta(n, q0) - partial_lattice_sum(n, images, q0));
  const double far2 = q0 * (s + 2.0) / (2.0 * n) * std::pow(length, -q0 - 2.0) *
                      (lattice_zeta(n, q0 + 2.0) - partial_lattice_sum(n, images, q0 + 2.0));
  const std::vector<KernelLine> lines = periodic_kernel(
      grid, 1, images,
      [&](const Point& e, int) {
        double r2 = 0.0;
        for (int q = 0; q < n; ++q) r2 += e[q] * e[q];
        return std::pow(r2, -0.5 * q0);
      },
      [&](int, const Point& d) {
        double r2 = 0.0;
        for (int q = 0; q < n; ++q) r2 += d[q] * d[q];
        return far0 + far2 * r2;
      });

  // h^n sum over m != 0 of |h m|^{-n-s}, the full lattice.
  const double kernel_sum = std::pow(h, -s) * lattice_zeta(n, q0);
  const double local = std::pow(h, 2.0 - s) * lattice_zeta(n, n + s - 2.0) / (2.0 * n);
  const double constant = singular_integral_constant(n, s);

  const std::vector<std::vector<double>> conv = lattice_convolution(f, lines, 1);
  PhysicalField out(grid);
  for_each_point(grid, [&](std::size_t offset, const Index& idx) {
    double laplacian = 0.0;
    for (int j = 0; j < n; ++j) laplacian += second_difference(f, idx, j, h);
    out[offset] = constant * (f[offset] * kernel_sum - conv[0][offset] + laplacian * local);
  });
  return out;
}

PhysicalVector kernel_velocity(const PhysicalField& theta, double alpha) {
  const double constant = velocity_kernel_constant(theta.grid().dimension(), alpha);
  check_confinement(theta, "kernel_velocity");
  const Grid& grid = theta.grid();
  const int n = grid.dimension();
  const double h = grid.spacing();
  const double length = grid.length();
  const int images = image_radius(n);

  // Images beyond P: the constant term cancels in pairs, the linear one is
  // -(2 alpha / n) |L p|^{-n-2 alpha} d.
  const double q0 = n + 2.0 * alpha;
  const double far1 = -(2.0 * alpha / n) * std::pow(length, -q0) *
                      (lattice_zeta(n, q0) - partial_lattice_sum(n, images, q0));
  const std::vector<KernelLine> lines = periodic_kernel(
      grid, n, images,
      [&](const Point& e, int q) {
        double r2 = 0.0;
        for (int j = 0; j < n; ++j) r2 += e[j] * e[j];
        return e[q] * std::pow(r2, -0.5 * q0);
      },
      [&](int q, const Point& d) { return far1 * d[q]; });
  const double local = std::pow(h, 2.0 - 2.0 * alpha) * lattice_zeta(n, n + 2.0 * alpha - 2.0) / n;

  const std::vector<std::vector<double>> conv = lattice_convolution(theta, lines, n);
  PhysicalVector out = make_physical_vector(grid);
  for_each_point(grid, [&](std::size_t offset, const Index& idx) {
    for (int j = 0; j < n; ++j)
      out[j][offset] = constant * (conv[static_cast<std::size_t>(j)][offset] + first_difference(theta, idx, j, h) * local);
  });
  return out;
}

}  // namespace nlt

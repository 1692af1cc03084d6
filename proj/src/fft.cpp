#include "nlt/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace nlt {

namespace {

// FFTW plans for one (dimension, resolution) pair. Plans are created with
// FFTW_ESTIMATE so the algorithm choice, and therefore every bit of the
// output, is reproducible from run to run.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(const Grid& grid) {
  static std::map<std::pair<int, int>, std::unique_ptr<PlanPair>> cache;
  const std::lock_guard<std::mutex> lock(planner_mutex());
  const auto key = std::make_pair(grid.dimension(), grid.resolution());
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  int dims[kMaxDimension];
  for (int j = 0; j < grid.dimension(); ++j) dims[j] = grid.resolution();
  RealBuffer real(grid.size());
  ComplexBuffer spec(grid.spectral_size());
  auto* cspec = reinterpret_cast<fftw_complex*>(spec.data());
  auto pair = std::make_unique<PlanPair>();
  pair->forward = fftw_plan_dft_r2c(grid.dimension(), dims, real.data(), cspec, FFTW_ESTIMATE);
  pair->backward = fftw_plan_dft_c2r(grid.dimension(), dims, cspec, real.data(), FFTW_ESTIMATE);
  if (!pair->forward || !pair->backward) throw std::runtime_error("FFTW plan creation failed");
  return *cache.emplace(key, std::move(pair)).first->second;
}

}  // namespace

namespace detail {

void forward_into(const PhysicalField& field, SpectralField& out) {
  const Grid& grid = field.grid();
  const PlanPair& plans = plans_for(grid);
  // r2c leaves its input intact, but FFTW's new-array API takes a non-const pointer.
  fftw_execute_dft_r2c(plans.forward, const_cast<double*>(field.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = grid.cell_volume();
  for (Complex& c : out.coefficients()) c *= scale;
  out.enforce_hermitian();
}

void inverse_into(const SpectralField& spectrum, PhysicalField& out) {
  const Grid& grid = spectrum.grid();
  const PlanPair& plans = plans_for(grid);
  // c2r destroys its input.
  ComplexBuffer scratch(spectrum.coefficients().begin(), spectrum.coefficients().end());
  fftw_execute_dft_c2r(plans.backward, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
  const double scale = 1.0 / grid.volume();
  for (double& v : out.values()) v *= scale;
}

}  // namespace detail

SpectralField forward_transform(const PhysicalField& field) {
  SpectralField out(field.grid());
  detail::forward_into(field, out);
  return out;
}

PhysicalField inverse_transform(const SpectralField& spectrum) {
  const double defect = spectrum.hermitian_defect();
  if (defect > kHermitianTolerance)
    throw HermitianError("spectrum violates Hermitian symmetry (relative defect " + std::to_string(defect) + ")");
  PhysicalField out(spectrum.grid());
  detail::inverse_into(spectrum, out);
  return out;
}

}  // namespace nlt

#include "nlt/recurrence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlt {

void RecurrenceParams::validate() const {
  if (!(C > 1.0)) throw std::invalid_argument("C must be > 1");
  if (!(beta > 1.0)) throw std::invalid_argument("beta must be > 1");
  if (!(W0 >= 0.0) || !std::isfinite(W0)) throw std::invalid_argument("W0 must be >= 0");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
}

double threshold(double C, double beta) {
  if (!(C > 1.0)) throw std::invalid_argument("C must be > 1");
  if (!(beta > 1.0)) throw std::invalid_argument("beta must be > 1");
  return std::pow(C, -1.0 / ((beta - 1.0) * (beta - 1.0)));
}

IterateResult iterate(const RecurrenceParams& p) {
  p.validate();
  IterateResult out;
  out.W.reserve(p.k_max + 1);
  out.W.push_back(p.W0);
  for (int k = 0; k < p.k_max; ++k) {
    double next = std::pow(p.C, k) * std::pow(out.W.back(), p.beta);
    if (!std::isfinite(next)) {
      out.diverged = true;
      out.k_overflow = k + 1;
      break;
    }
    if (next < std::numeric_limits<double>::min()) {
      if (next != 0.0 || out.W.back() != 0.0)
        if (out.k_at_underflow < 0) out.k_at_underflow = k + 1;
      next = 0.0;
    }
    out.W.push_back(next);
  }
  return out;
}

std::string to_string(Convergence c) {
  switch (c) {
    case Convergence::converged: return "converged";
    case Convergence::diverged: return "diverged";
    case Convergence::undecided: return "undecided";
  }
  return "unknown";
}

ConvergenceReport converges(const RecurrenceParams& p, double boundary_tolerance) {
  p.validate();
  ConvergenceReport out;
  const IterateResult seq = iterate(p);
  out.k_at_underflow = seq.k_at_underflow;
  if (p.W0 == 0.0) {
    out.status = Convergence::converged;
    out.log_ratio = -std::numeric_limits<double>::infinity();
    return out;
  }
  const double logC = std::log(p.C);
  const double a = logC / (p.beta - 1.0);
  const double y0 = std::log(p.W0) + a / (p.beta - 1.0);
  out.log_ratio = y0;

  const double thr = threshold(p.C, p.beta);
  if (std::abs(p.W0 / thr - 1.0) <= boundary_tolerance) return out;

  if (!seq.diverged && seq.W.size() == std::size_t(p.k_max) + 1 && seq.W.back() < 1e-30) {
    out.status = Convergence::converged;
  } else if (y0 < 0.0) {
    out.status = Convergence::converged;
  } else if (y0 > 0.0) {
    out.status = Convergence::diverged;
    return out;
  } else {
    return out;
  }
  // W_k = exp(y_k - k a - a/(beta-1)) with y_k = beta^k y_0 < 0 decreasing, so
  // every later term is bounded by the k_max value of the envelope.
  const double yk = std::pow(p.beta, p.k_max) * std::min(y0, 0.0);
  out.tail_bound = std::exp(yk - p.k_max * a - a / (p.beta - 1.0));
  return out;
}

std::vector<double> default_fractions() {
  return {1e-3, 1e-2, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 0.999999};
}

std::vector<SweepRow> sweep(int steps, const std::vector<double>& fractions, int k_max) {
  if (steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
  std::vector<SweepRow> rows;
  rows.reserve(std::size_t(steps) * steps * fractions.size());
  for (int i = 1; i <= steps; ++i) {
    const double C = std::pow(10.0, double(i) / steps);
    for (int j = 1; j <= steps; ++j) {
      const double beta = std::pow(4.0, double(j) / steps);
      const double thr = threshold(C, beta);
      for (double f : fractions) {
        RecurrenceParams p{C, beta, f * thr, k_max};
        const ConvergenceReport r = converges(p);
        rows.push_back({C, beta, p.W0, r.status, r.k_at_underflow});
      }
    }
  }
  return rows;
}

}  // namespace nlt

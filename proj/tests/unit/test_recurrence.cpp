#include <doctest.h>

#include <cmath>

#include "nlt/recurrence.hpp"

using namespace nlt;

TEST_CASE("threshold values") {
  CHECK(threshold(2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(threshold(std::exp(1.0), 1.5) == doctest::Approx(0.0183156388887342).epsilon(1e-12));
  CHECK(threshold(2.0, 1e6) > 0.999999);
  CHECK_THROWS(threshold(1.0, 2.0));
  CHECK_THROWS(threshold(2.0, 1.0));
  CHECK(threshold(3.0, 2.0) < threshold(2.0, 2.0));
  CHECK(threshold(2.0, 3.0) > threshold(2.0, 2.0));
}

TEST_CASE("iterate follows the extremal recurrence") {
  const IterateResult r = iterate({2.0, 2.0, 0.25, 12});
  CHECK(r.W[1] == 0.0625);
  CHECK(r.W[2] == 0.0078125);
  CHECK(r.W[3] == doctest::Approx(2.44140625e-4).epsilon(1e-15));
  CHECK(!r.diverged);
  CHECK(r.W.back() == 0.0);
  CHECK(r.k_at_underflow > 0);

  const IterateResult big = iterate({2.0, 2.0, 1.5, 64});
  CHECK(big.W[1] == 2.25);
  CHECK(big.W[2] == 10.125);
  CHECK(big.diverged);

  const IterateResult zero = iterate({2.0, 2.0, 0.0, 5});
  for (double w : zero.W) CHECK(w == 0.0);
}

TEST_CASE("iterate is monotone in W0") {
  const IterateResult a = iterate({3.0, 1.7, 0.01, 30});
  const IterateResult b = iterate({3.0, 1.7, 0.02, 30});
  for (std::size_t k = 0; k < std::min(a.W.size(), b.W.size()); ++k) CHECK(a.W[k] <= b.W[k]);
}

TEST_CASE("convergence decisions") {
  CHECK(converges({2.0, 2.0, 0.25, 64}).status == Convergence::converged);
  CHECK(converges({2.0, 2.0, 1.5, 64}).status == Convergence::diverged);
  CHECK(converges({2.0, 2.0, 0.5, 64}).status == Convergence::undecided);
  CHECK(converges({2.0, 2.0, 0.0, 64}).status == Convergence::converged);
  const ConvergenceReport r = converges({1.5, 1.2, 0.5 * threshold(1.5, 1.2), 8});
  CHECK(r.status == Convergence::converged);
  CHECK(r.tail_bound > 0.0);
  CHECK(r.tail_bound < threshold(1.5, 1.2));
  CHECK_THROWS(converges({0.5, 2.0, 0.1, 10}));
}

TEST_CASE("sweep below threshold converges everywhere") {
  const std::vector<SweepRow> rows = sweep(20, default_fractions());
  CHECK(rows.size() == 4000);
  for (const SweepRow& r : rows) CHECK(r.status == Convergence::converged);
}

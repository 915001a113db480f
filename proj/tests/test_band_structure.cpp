#include <cmath>
#include <random>

#include "doctest.h"

#include "chain/band_structure.hpp"
#include "chain/chain_model.hpp"
#include "chain/errors.hpp"

using namespace chain;

namespace {

// Half-trace written out from scratch, real or imaginary wavenumber.
double half_trace(double e, double alpha) {
  if (e > 0) {
    const double k = std::sqrt(e);
    return std::cos(k * kPi) + alpha / (4 * k) * std::sin(k * kPi);
  }
  if (e < 0) {
    const double x = std::sqrt(-e);
    return std::cosh(x * kPi) + alpha / (4 * x) * std::sinh(x * kPi);
  }
  return 1.0 + alpha * kPi / 4.0;
}

// Plain bisection on |t| - 1 for an edge inside [a, b].
double edge_between(double a, double b, double alpha) {
  auto h = [&](double e) { return std::abs(half_trace(e, alpha)) - 1.0; };
  double fa = h(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = h(m);
    if ((fm < 0) == (fa < 0)) { a = m; fa = fm; } else { b = m; }
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("membership agrees with the half-trace oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-10.0, 30.0);
  for (double alpha : {3.0, -3.0, 0.5, -1.0, kBorderlineCoupling, 8.0}) {
    int disagreements = 0;
    for (int i = 0; i < 2000; ++i) {
      const double e = dist(rng);
      const double t = std::abs(half_trace(e, alpha));
      if (std::abs(t - 1.0) < 1e-9) continue;
      if ((t < 1.0) != in_spectrum(e, alpha)) ++disagreements;
    }
    CHECK(disagreements == 0);
  }
}

TEST_CASE("repulsive bands end at (n+1)^2 and start at computed edges") {
  const auto spec = compute_bands(3.0, 30.0);
  REQUIRE(spec.bands.size() == 6);
  for (std::size_t i = 0; i < spec.bands.size(); ++i) {
    const double n = static_cast<double>(i);
    const auto& b = spec.bands[i];
    CHECK(b.e_hi == (n + 1) * (n + 1));
    const double lo = edge_between(n * n + 1e-9, (n + 1) * (n + 1) - 1e-9, 3.0);
    CHECK(b.e_lo == doctest::Approx(lo).epsilon(1e-12));
    CHECK(b.closed_lo);
    CHECK(b.closed_hi);
    CHECK(b.k_lo * b.k_lo == doctest::Approx(b.e_lo).epsilon(1e-13));
  }
  CHECK(spec.flat_eigenvalues == std::vector<double>{1, 4, 9, 16, 25});
}

TEST_CASE("attractive bands start at n^2") {
  const auto spec = compute_bands(-3.0, 30.0);
  CHECK(spec.bands.front().e_hi < 0.0);
  CHECK(spec.bands.front().e_lo == doctest::Approx(edge_between(-1.0, -0.5, -3.0)).epsilon(1e-12));
  int n = 0;
  for (const auto& b : spec.bands) {
    if (b.e_lo < 0) continue;
    ++n;
    CHECK(b.e_lo == static_cast<double>(n * n));
    CHECK(b.k_hi < n + 1);
  }
  CHECK(n == 5);
}

TEST_CASE("slope of g at integers fixes which side of n^2 is a band") {
  // d/dk g at k = n equals (-1)^n alpha pi / (4n), so for alpha < 0 the
  // modulus |g| drops below 1 just above n.
  for (double alpha : {-3.0, -0.7}) {
    for (int n = 1; n <= 4; ++n) {
      const double h = 1e-6;
      const double slope = (g(n + h, alpha) - g(n - h, alpha)) / (2 * h);
      CHECK(slope == doctest::Approx((n % 2 ? -1 : 1) * alpha * kPi / (4 * n)).epsilon(1e-6));
      CHECK(in_spectrum((n + 1e-4) * (n + 1e-4), alpha));
      CHECK_FALSE(in_spectrum((n - 1e-4) * (n - 1e-4), alpha));
    }
  }
}

TEST_CASE("free chain and borderline coupling") {
  const auto free = compute_bands(0.0, 10.0);
  REQUIRE(free.bands.size() == 1);
  CHECK(free.bands[0].e_lo == 0.0);
  CHECK_FALSE(free.bands[0].closed_hi);

  const auto border = compute_bands(kBorderlineCoupling, 10.0);
  CHECK(std::abs(border.bands.front().e_hi) <= 1e-10);
  CHECK(border.bands.front().e_lo < 0.0);
  CHECK(lowest_band_threshold(kBorderlineCoupling) == doctest::Approx(border.bands.front().e_lo));
}

TEST_CASE("bands are ordered and disjoint") {
  for (double alpha : {4.0, -4.0, 0.2, -0.2}) {
    const auto spec = compute_bands(alpha, 40.0);
    for (std::size_t i = 0; i < spec.bands.size(); ++i) {
      CHECK(spec.bands[i].e_lo < spec.bands[i].e_hi);
      if (i > 0) CHECK(spec.bands[i - 1].e_hi < spec.bands[i].e_lo);
    }
  }
}

TEST_CASE("invalid cutoff") {
  CHECK_THROWS_AS(compute_bands(3.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(lowest_band_threshold(1.0), InvalidArgument);
  CHECK(band_edges_kappa(2.0).empty());
}

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "chain/band_structure.hpp"
#include "chain/chain_model.hpp"
#include "chain/discrete_spectrum.hpp"
#include "chain/errors.hpp"
#include "chain/transfer_matrix.hpp"

using namespace chain;

namespace {

// Bound-state condition written out directly, no library helpers.
double condition(double k, double alpha, double theta, int sign) {
  const double c = std::cos(k * kPi), s = std::sin(k * kPi);
  const double gv = c + alpha / (4 * k) * s;
  const double fv = -c + s * s / (alpha / (4 * k) * s + std::copysign(std::sqrt(gv * gv - 1), gv));
  return sign * std::cos(k * theta) - fv;
}

// Sign changes of the condition on a dense uniform grid, refined by
// bisection. Roots can sit within 1e-12 of the non-integer edge, where the
// condition behaves like sqrt(distance), so both ends also get a
// geometric ladder of points.
std::vector<double> dense_scan(double alpha, double theta, const GapInterval& gap, int sign) {
  const int m = 10000;
  // Both forms vanish trivially as k -> 0 in the odd sector; that limit is
  // not an eigenvalue.
  const double a = gap.k_lo == 0.0 ? 1e-6 : gap.k_lo, b = gap.k_hi;
  std::vector<double> xs;
  for (int i = 1; i < m; ++i) xs.push_back(a + (b - a) * i / m);
  for (double d = 1e-4; d > 4e-15 * b; d *= 0.5) {
    xs.push_back(a + d);
    xs.push_back(b - d);
  }
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  auto cond = [&](double x) {
    // Points rounding into the band are skipped.
    const double c = std::cos(x * kPi), s = std::sin(x * kPi);
    if (std::abs(c + alpha / (4 * x) * s) <= 1.0) return std::nan("");
    return condition(x, alpha, theta, sign);
  };
  double x0 = xs.front(), f0 = cond(x0);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double x1 = xs[i];
    const double f1 = cond(x1);
    if (std::isnan(f1)) continue;
    if (!std::isnan(f0) && (f0 < 0) != (f1 < 0)) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = cond(mid);
        if ((fm < 0) == (flo < 0)) { lo = mid; flo = fm; } else { hi = mid; }
      }
      out.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

const GapInterval& gap_n(const std::vector<GapInterval>& gaps, int n) {
  for (const auto& g : gaps) {
    if (g.n == n) return g;
  }
  throw std::runtime_error("gap not found");
}

}  // namespace

TEST_CASE("gap intervals") {
  const auto rep = gap_intervals(3.0, 3);
  REQUIRE(rep.size() >= 3);
  const auto& i1 = gap_n(rep, 1);
  CHECK(i1.k_lo == 1.0);
  CHECK(i1.k_hi == doctest::Approx(1.3274098623839179).epsilon(1e-12));
  const auto att = gap_intervals(-3.0, 3);
  const auto& a1 = gap_n(att, 1);
  CHECK(a1.k_lo == 0.0);
  CHECK(a1.k_hi == 1.0);
  CHECK_THROWS_AS(gap_intervals(0.0, 3), InvalidArgument);
}

TEST_CASE("gap roots match a dense independent scan") {
  for (double alpha : {3.0, -3.0, 1.0}) {
    const auto gaps = gap_intervals(alpha, 4);
    for (double theta : {0.37, 1.0, 1.9, 2.8}) {
      for (int n = 1; n <= 4; ++n) {
        const auto& gap = gap_n(gaps, n);
        for (Parity p : {Parity::Even, Parity::Odd}) {
          const auto got = gap_roots(alpha, theta, gap, p);
          const auto want = dense_scan(alpha, theta, gap, p == Parity::Even ? 1 : -1);
          INFO("alpha=", alpha, " theta=", theta, " n=", n, " parity=", parity_symbol(p),
               " got=", got.size() ? got[0] : -1.0, " want=", want.size() ? want[0] : -1.0);
          REQUIRE(got.size() == want.size());
          for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-11));
        }
      }
    }
  }
}

TEST_CASE("even bound states seed the decaying transfer mode") {
  const double alpha = 3.0;
  for (double theta : {0.5, 1.2, 2.4}) {
    for (const auto& r : eigenvalues_at(alpha, theta, 30.0)) {
      if (r.negative || r.parity != Parity::Even || r.multiplicity != 1) continue;
      const Complex k{r.k, 0.0};
      const Vec2 seed = boundary_vector_even(k, alpha, theta);
      const auto e = transfer_eigen(k, alpha);
      CHECK(parallel_defect(seed, e.v2) < 1e-7);
    }
  }
}

TEST_CASE("singular angle empties the gap for that parity") {
  const auto gaps = gap_intervals(3.0, 4);
  // Even, n = 4, ell = 1: theta = 3 pi / 4.
  CHECK(gap_roots(3.0, 3.0 * kPi / 4.0, gap_n(gaps, 4), Parity::Even).empty());
  CHECK(is_singular_angle(3.0 * kPi / 4.0, 4, Parity::Even));
  CHECK_FALSE(is_singular_angle(3.0 * kPi / 4.0, 4, Parity::Odd));
  CHECK(singular_angles(3, Parity::Odd) == std::vector<double>{kPi / 3.0});
}

TEST_CASE("double eigenvalue merges into multiplicity two") {
  const double alpha = 3.0;
  const auto gaps = gap_intervals(alpha, 1);
  const auto& gap = gap_n(gaps, 1);
  double lo = gap.k_lo + 1e-6, hi = gap.k_hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::tan(mid * kPi) < alpha / 2) lo = mid; else hi = mid;
  }
  const double ks = 0.5 * (lo + hi);
  const double theta = std::acos(f(ks, alpha)) / ks;
  int doubles = 0;
  for (const auto& r : eigenvalues_at(alpha, theta, 3.0)) {
    if (r.gap_index != 1) continue;
    CHECK(r.multiplicity == 2);
    CHECK(r.k == doctest::Approx(ks).epsilon(1e-10));
    ++doubles;
  }
  CHECK(doubles == 1);
  CHECK(double_eigenvalue_residual(ks, alpha) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("negative energies") {
  const double alpha = -3.0;
  const double k0 = kappa0(alpha);
  CHECK(k0 * std::tanh(k0 * kPi) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK_THROWS_AS(kappa0(1.0), InvalidArgument);
  const double band_lo = compute_bands(alpha, 10.0).bands.front().e_lo;
  for (double theta : {0.3, 1.5, 3.0}) {
    const auto kappa = solve_negative(alpha, theta, Parity::Even);
    REQUIRE(kappa);
    CHECK(std::abs(spectral_residual_negative(*kappa, alpha, theta, Parity::Even)) < 1e-10);
    CHECK(-*kappa * *kappa > -k0 * k0);
    CHECK(-*kappa * *kappa < band_lo);
  }
  // Below the borderline coupling the odd sector has a root between the
  // lowest band and zero for theta small enough.
  const auto odd = solve_negative(-4.0, 1.0, Parity::Odd);
  REQUIRE(odd);
  CHECK(std::abs(spectral_residual_negative(*odd, -4.0, 1.0, Parity::Odd)) < 1e-10);
  CHECK_FALSE(solve_negative(-2.0, 1.0, Parity::Odd).has_value());
}

TEST_CASE("at most two eigenvalues per gap") {
  for (double alpha : {3.0, -3.0, 0.5, -1.0}) {
    for (int i = 0; i < 40; ++i) {
      const double theta = (i + 0.5) * kPi / 40;
      std::vector<int> count(8, 0);
      for (const auto& r : eigenvalues_at(alpha, theta, 30.0)) count[r.gap_index] += r.multiplicity;
      for (int c : count) CHECK(c <= 2);
    }
  }
}

TEST_CASE("traced curve is continuous and validates its grid") {
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(0.05 + 0.03 * i);
  const auto curve = trace_eigenvalue_curve(3.0, Parity::Odd, 2, grid);
  REQUIRE(curve.samples.size() == grid.size());
  for (std::size_t i = 1; i < curve.samples.size(); ++i) {
    REQUIRE(curve.samples[i].s);
    CHECK(std::abs(*curve.samples[i].s - *curve.samples[i - 1].s) < 0.05);
  }
  CHECK_THROWS_AS(trace_eigenvalue_curve(3.0, Parity::Odd, 2, {0.5, 0.4}), InvalidArgument);
  CHECK_THROWS_AS(trace_eigenvalue_curve(3.0, Parity::Odd, 2, {0.0, 0.4}), InvalidArgument);
}

TEST_CASE("signed energy") {
  CHECK(energy_of_signed(-2.0) == -4.0);
  CHECK(energy_of_signed(3.0) == 9.0);
  CHECK(std::string(parity_symbol(Parity::Odd)) == "-");
}

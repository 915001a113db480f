#include <cmath>

#include "doctest.h"

#include "chain/chain_model.hpp"
#include "chain/errors.hpp"

using namespace chain;

TEST_CASE("g at closed-form points") {
  CHECK(g(0.5, 3.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(g(1.5, 3.0) == doctest::Approx(-0.5).epsilon(1e-15));
  // Band edges at integers: g(n) = (-1)^n regardless of alpha.
  for (int n = 1; n <= 6; ++n) CHECK(g(static_cast<double>(n), -2.7) == doctest::Approx(n % 2 ? -1.0 : 1.0));
  // k -> 0 limit: 1 + alpha pi / 4.
  CHECK(g(1e-6, 2.0) == doctest::Approx(1.0 + kPi / 2.0).epsilon(1e-10));
}

TEST_CASE("g_tilde is g on the imaginary axis") {
  for (double kappa : {0.1, 0.7, 1.9}) {
    const Complex gc = g(Complex{0.0, kappa}, -1.3);
    CHECK(gc.real() == doctest::Approx(g_tilde(kappa, -1.3)).epsilon(1e-13));
    CHECK(std::abs(gc.imag()) < 1e-13);
    const double direct = std::cosh(kappa * kPi) - 1.3 / (4.0 * kappa) * std::sinh(kappa * kPi);
    CHECK(g_tilde(kappa, -1.3) == doctest::Approx(direct).epsilon(1e-14));
  }
}

TEST_CASE("f from its definition") {
  const double alpha = 3.0;
  for (double k : {0.2, 1.1, 2.1, 3.05}) {
    const double gv = std::cos(k * kPi) + alpha / (4 * k) * std::sin(k * kPi);
    REQUIRE(std::abs(gv) > 1.0);
    const double s = std::sin(k * kPi);
    const double expect =
        -std::cos(k * kPi) + s * s / (alpha / (4 * k) * s + std::copysign(std::sqrt(gv * gv - 1), gv));
    CHECK(f(k, alpha) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("f domain errors") {
  CHECK_THROWS_AS(f(0.9, 3.0), DomainError);        // inside the lowest band
  CHECK_THROWS_AS(f(2.0, 3.0), InvalidArgument);    // integer
}

TEST_CASE("f_tilde curvature by Richardson extrapolation") {
  for (double alpha : {-3.0, -4.0, -10.0}) {
    auto q = [&](double x) { return (f_tilde(x, alpha) + 1.0) / (x * x); };
    // q(x) = -C + c1 x^2 + ...; two Richardson levels.
    const double h = 2e-2;
    const double r1 = (4.0 * q(h / 2) - q(h)) / 3.0;
    const double r2 = (4.0 * q(h / 4) - q(h / 2)) / 3.0;
    const double lim = (16.0 * r2 - r1) / 15.0;
    CHECK(-lim == doctest::Approx(f_tilde_curvature(alpha)).epsilon(1e-6));
  }
}

TEST_CASE("closed-form curvature with the opposite root sign is -C") {
  // (1/2 + (a + sqrt(a^2 + 2a))^-1) pi^2 with a = alpha pi / 4 evaluates to
  // -C: the expansion of f~ is -1 - C x^2 with C > 0 given by f_tilde_curvature.
  for (double alpha : {-3.0, -6.0}) {
    const double a = alpha * kPi / 4.0;
    const double plus_root = (0.5 + 1.0 / (a + std::sqrt(a * a + 2.0 * a))) * kPi * kPi;
    CHECK(f_tilde_curvature(alpha) > 0.0);
    CHECK(plus_root == doctest::Approx(-f_tilde_curvature(alpha)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(f_tilde_curvature(-2.0), InvalidArgument);
}

TEST_CASE("Floquet phases") {
  for (Complex k : {Complex{0.3, 0}, Complex{1.4, 0}, Complex{0.0, 0.8}, Complex{2.3, 0.4}}) {
    const auto [z1, z2] = floquet_phases(k, 3.0);
    CHECK(std::abs(z1.phase * z2.phase - 1.0) < 1e-12);
    CHECK(std::abs(z1.phase + z2.phase - 2.0 * g(k, 3.0)) < 1e-12);
    CHECK(std::abs(z1.phase) >= std::abs(z2.phase));
  }
  // k = 0: z^2 - (2 + alpha pi / 2) z + 1 = 0.
  const auto [z1, z2] = floquet_phases(Complex{0.0, 0.0}, 1.0);
  const double b = 2.0 + kPi / 2.0;
  CHECK(z1.phase.real() == doctest::Approx((b + std::sqrt(b * b - 4.0)) / 2.0));
}

TEST_CASE("integer guard and sin_pi_over") {
  CHECK(is_integer_wavenumber(3.0 + 1e-10));
  CHECK_FALSE(is_integer_wavenumber(3.0 + 1e-8));
  CHECK_FALSE(is_integer_wavenumber(0.0));
  CHECK(sin_pi_over(0.0) == doctest::Approx(kPi));
  CHECK(sin_pi_over(0.5) == doctest::Approx(2.0));
  CHECK(sinh_pi_over(1e-8) == doctest::Approx(kPi));
}

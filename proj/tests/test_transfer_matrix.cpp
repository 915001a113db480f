#include <cmath>
#include <random>

#include "doctest.h"

#include "chain/chain_model.hpp"
#include "chain/errors.hpp"
#include "chain/transfer_matrix.hpp"

using namespace chain;

TEST_CASE("unimodular with trace 2g") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> kd(0.05, 6.0), im(-1.0, 1.0), ad(-5.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    const Complex k{kd(rng), i % 2 ? im(rng) : 0.0};
    if (k.imag() == 0.0 && is_integer_wavenumber(k.real())) continue;
    const double alpha = ad(rng);
    const auto m = transfer_matrix(k, alpha);
    CHECK(std::abs(m.det() - 1.0) < 1e-12);
    CHECK(std::abs(m.trace() - 2.0 * g(k, alpha)) < 1e-12);
  }
}

TEST_CASE("entries from the written-out matrix") {
  const Complex k{1.3, 0.2};
  const double alpha = 2.5;
  const Complex i{0.0, 1.0};
  const Complex b = alpha / (4.0 * i * k);
  const Complex e = std::exp(i * k * kPi);
  const auto m = transfer_matrix(k, alpha);
  CHECK(std::abs(m.m11 - (1.0 + b) * e) < 1e-14);
  CHECK(std::abs(m.m12 - b / e) < 1e-14);
  CHECK(std::abs(m.m21 + b * e) < 1e-14);
  CHECK(std::abs(m.m22 - (1.0 - b) / e) < 1e-14);
}

TEST_CASE("eigenpairs") {
  for (double k : {0.3, 1.2, 2.6}) {
    const auto m = transfer_matrix(Complex{k, 0}, 3.0);
    const auto e = transfer_eigen(Complex{k, 0}, 3.0);
    CHECK(std::abs(e.lambda1) >= std::abs(e.lambda2));
    CHECK(std::abs(e.lambda1 * e.lambda2 - 1.0) < 1e-12);
    for (auto [l, v] : {std::pair{e.lambda1, e.v1}, {e.lambda2, e.v2}}) {
      const Vec2 mv = m.apply(v);
      CHECK(norm({mv[0] - l * v[0], mv[1] - l * v[1]}) < 1e-12 * norm(v));
    }
  }
}

TEST_CASE("in-band ordering follows the hint") {
  const Complex k{0.8, 0.0};
  const auto e = transfer_eigen(k, 3.0);
  CHECK(std::abs(std::abs(e.lambda1) - 1.0) < 1e-12);
  CHECK(e.lambda1.imag() >= 0.0);
  const auto h = transfer_eigen(k, 3.0, e.lambda2);
  CHECK(std::abs(h.lambda1 - e.lambda2) < 1e-12);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(transfer_matrix(Complex{2.0, 0.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(transfer_matrix(Complex{0.0, 0.0}, 1.0), InvalidArgument);
  // g(1/2) = alpha / 2, so alpha = 2 puts k = 1/2 on a band edge.
  CHECK_THROWS_AS(transfer_eigen(Complex{0.5, 0.0}, 2.0), DegenerateError);
  // The growing mode overflows.
  const auto e = transfer_eigen(Complex{1.2, 0.0}, 40.0);
  CHECK_THROWS_AS(coefficient_sequence(e.v1, Complex{1.2, 0.0}, 40.0, 2000), OverflowError);
}

TEST_CASE("decaying mode decays at |lambda2|") {
  const Complex k{1.2, 0.0};
  const auto e = transfer_eigen(k, 3.0);
  CHECK(measured_decay_rate(e.v2, k, 3.0) == doctest::Approx(std::abs(e.lambda2)).epsilon(1e-9));
  const auto seq = coefficient_sequence(e.v2, k, 3.0, 5);
  REQUIRE(seq.size() == 5);
  CHECK(seq[0].ring_index == 1);
  CHECK(std::abs(seq[0].c_plus - e.v2[0]) == 0.0);
}

TEST_CASE("vector helpers") {
  const Vec2 v{Complex{1, 1}, Complex{2, 0}};
  CHECK(norm(v) == doctest::Approx(std::sqrt(6.0)));
  CHECK(parallel_defect(v, {v[0] * Complex{0, 3}, v[1] * Complex{0, 3}}) < 1e-15);
  CHECK(parallel_defect({Complex{1, 0}, Complex{0, 0}}, {Complex{0, 0}, Complex{1, 0}}) ==
        doctest::Approx(1.0));
}

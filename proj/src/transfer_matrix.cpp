#include "chain/transfer_matrix.hpp"

#include <cmath>
#include <string>

#include "chain/errors.hpp"

namespace chain {

namespace {

constexpr double kDegenerateTol = 1e-12;
constexpr double kOverflowNorm = 1e300;
constexpr double kTieTol = 1e-12;

const Complex kI{0.0, 1.0};

bool is_excluded(Complex k) {
  if (std::abs(k) == 0.0) return true;
  return k.imag() == 0.0 && is_integer_wavenumber(std::abs(k.real()));
}

// Eigenvector for lambda from whichever row of (M - lambda) is better
// conditioned; the first row gives the closed form (b e^{-ik pi}, lambda - m11).
Vec2 eigenvector(const TransferMatrix& m, Complex lambda) {
  const Vec2 a{m.m12, lambda - m.m11};
  const Vec2 b{lambda - m.m22, m.m21};
  return norm(a) >= norm(b) ? a : b;
}

}  // namespace

double norm(const Vec2& v) { return std::hypot(std::abs(v[0]), std::abs(v[1])); }

double parallel_defect(const Vec2& v, const Vec2& w) {
  const double nv = norm(v);
  const double nw = norm(w);
  if (nv == 0.0 || nw == 0.0) return 0.0;
  return std::abs(v[0] * w[1] - v[1] * w[0]) / (nv * nw);
}

TransferMatrix transfer_matrix(Complex k, double alpha) {
  if (is_excluded(k)) throw InvalidArgument("transfer_matrix: k must be nonzero and non-integer");
  const Complex b = alpha / (4.0 * kI * k);
  const Complex ep = std::exp(kI * k * kPi);
  const Complex em = std::exp(-kI * k * kPi);
  return {(1.0 + b) * ep, b * em, -b * ep, (1.0 - b) * em, k, alpha};
}

TransferEigen transfer_eigen(Complex k, double alpha, std::optional<Complex> previous_lambda1) {
  const TransferMatrix m = transfer_matrix(k, alpha);
  const Complex gv = 0.5 * m.trace();
  const Complex disc = (gv - 1.0) * (gv + 1.0);
  if (std::abs(disc) < kDegenerateTol) {
    throw DegenerateError("transfer_eigen: band edge, eigenvalues coincide");
  }
  const Complex w = std::sqrt(disc);
  Complex big = gv + w;
  if (std::abs(gv - w) > std::abs(big)) big = gv - w;
  Complex small = 1.0 / big;
  if (std::abs(std::abs(big) - std::abs(small)) < kTieTol) {
    const bool swap = previous_lambda1
                          ? std::abs(small - *previous_lambda1) < std::abs(big - *previous_lambda1)
                          : small.imag() > big.imag();
    if (swap) std::swap(big, small);
  }
  return {big, small, eigenvector(m, big), eigenvector(m, small)};
}

Vec2 boundary_vector_even(Complex k, double alpha, double theta) {
  const Complex s = std::sin(k * kPi);
  if (std::abs(s) < 1e-12) throw InvalidArgument("boundary_vector_even: sin(k pi) vanishes");
  const Complex p = (std::cos(k * kPi) + std::cos(k * theta)) / s;
  const Complex q = 1.0 - alpha * p / (2.0 * k);
  return {p + kI * q, p - kI * q};
}

std::vector<CoefficientPair> coefficient_sequence(const Vec2& seed, Complex k, double alpha,
                                                  int j_max) {
  if (j_max < 1) throw InvalidArgument("coefficient_sequence: j_max must be >= 1");
  const TransferMatrix m = transfer_matrix(k, alpha);
  std::vector<CoefficientPair> out;
  out.reserve(static_cast<std::size_t>(j_max));
  Vec2 c = seed;
  for (int j = 1; j <= j_max; ++j) {
    if (j > 1) c = m.apply(c);
    if (!(norm(c) <= kOverflowNorm)) {
      throw OverflowError("coefficient_sequence: coefficients exceed 1e300 at ring " +
                          std::to_string(j));
    }
    out.push_back({c[0], c[1], j});
  }
  return out;
}

double measured_decay_rate(const Vec2& seed, Complex k, double alpha, int j_max) {
  const auto seq = coefficient_sequence(seed, k, alpha, j_max);
  const double n1 = norm({seq[0].c_plus, seq[0].c_minus});
  if (n1 == 0.0) throw InvalidArgument("measured_decay_rate: zero seed");
  double last = n1;
  int steps = 0;
  for (std::size_t j = 1; j < seq.size(); ++j) {
    last = norm({seq[j].c_plus, seq[j].c_minus});
    steps = static_cast<int>(j);
    if (last < 1e-2 * n1) break;
  }
  if (steps == 0) return 1.0;
  return std::pow(last / n1, 1.0 / steps);
}

}  // namespace chain

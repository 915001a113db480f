#pragma once

// Ring-to-ring transfer matrix of the chain:
//
//   M = [ (1 + b) e^{ik pi}      b e^{-ik pi}     ]     b = alpha / (4ik)
//       [   -b e^{ik pi}     (1 - b) e^{-ik pi}   ]
//
// det M = 1 and tr M = 2 g(k).

#include <array>
#include <optional>
#include <vector>

#include "chain/chain_model.hpp"

namespace chain {

using Vec2 = std::array<Complex, 2>;

struct TransferMatrix {
  Complex m11, m12, m21, m22;
  Complex k;
  double alpha;

  Complex det() const { return m11 * m22 - m12 * m21; }
  Complex trace() const { return m11 + m22; }
  Vec2 apply(const Vec2& v) const { return {m11 * v[0] + m12 * v[1], m21 * v[0] + m22 * v[1]}; }
};

struct TransferEigen {
  Complex lambda1, lambda2;
  Vec2 v1, v2;
};

struct CoefficientPair {
  Complex c_plus;
  Complex c_minus;
  int ring_index;
};

// Throws InvalidArgument at k = 0 or integer real k.
TransferMatrix transfer_matrix(Complex k, double alpha);

// Eigenpairs ordered |lambda1| >= |lambda2|. When the moduli tie (inside a
// band) and a previous lambda1 is supplied, the root closest to it comes
// first; otherwise the root with non-negative imaginary part does.
// Throws DegenerateError when |g^2 - 1| < 1e-12.
TransferEigen transfer_eigen(Complex k, double alpha,
                             std::optional<Complex> previous_lambda1 = std::nullopt);

// Even-sector initial coefficients (C1+, C1-) of a bound state, up to scale.
// Throws InvalidArgument when |sin k pi| < 1e-12.
Vec2 boundary_vector_even(Complex k, double alpha, double theta);

// Pairs (C_j+, C_j-) = M^{j-1} seed for j = 1..j_max. Throws OverflowError
// once a norm exceeds 1e300.
std::vector<CoefficientPair> coefficient_sequence(const Vec2& seed, Complex k, double alpha,
                                                  int j_max);

// Geometric-mean growth factor of the coefficient norms over the first
// j_max rings. Stops early once the norm has fallen by 1e-2, before
// rounding of the expanding component can dominate.
double measured_decay_rate(const Vec2& seed, Complex k, double alpha, int j_max = 20);

double norm(const Vec2& v);
// |v x w| / (|v| |w|), zero for parallel vectors.
double parallel_defect(const Vec2& v, const Vec2& w);

}  // namespace chain

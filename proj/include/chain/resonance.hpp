#pragma once

// Complex solutions of the polynomial-cleared spectral condition
//
//   F(k) = alpha (1 + s c_t c_p)(s c_t + c_p) - 2k sin(k pi) (1 + 2s c_t c_p + c_t^2)
//
// with c_t = cos(k theta), c_p = cos(k pi) and s = +1 (H+) or -1 (H-).
// F is entire and even in k. Its real zeros in the gaps are the bound
// states; zeros off the real axis are resonance poles.

#include <string>
#include <vector>

#include "chain/chain_model.hpp"
#include "chain/discrete_spectrum.hpp"

namespace chain {

enum class Branch { Real, Upper, Lower };

const char* branch_name(Branch b);

// Point (theta0, n) where a real and two complex branches meet.
struct SingularPoint {
  int n;
  int ell;
  Parity parity;
  double theta0;
  double k0;
};

// Throws InvalidArgument unless 1 <= ell <= floor((n+1)/2) (even) or
// 1 <= ell <= floor(n/2) (odd).
SingularPoint make_singular_point(int n, int ell, Parity parity);
std::vector<SingularPoint> singular_points(int n_max, Parity parity);

Complex resonance_residual(Complex k, double alpha, double theta, Parity parity);
// The same polynomial evaluated term by term; loses relative accuracy near
// singular points, where F vanishes to third order.
Complex resonance_residual_direct(Complex k, double alpha, double theta, Parity parity);
// Exact partial derivatives.
Complex resonance_residual_dk(Complex k, double alpha, double theta, Parity parity);
Complex resonance_residual_dtheta(Complex k, double alpha, double theta, Parity parity);
// Central difference in k with h = 1e-7 (1 + |k|).
Complex resonance_residual_dk_fd(Complex k, double alpha, double theta, Parity parity);

struct NewtonResult {
  Complex k;
  double residual_abs;
  int iterations;
  bool converged;
};

NewtonResult newton_resonance(Complex k, double alpha, double theta, Parity parity,
                              double tol = 1e-12, int max_iter = 60,
                              bool exact_derivative = false);

// Leading Puiseux coefficient c in k - k0 ~ c |theta - theta0|^{4/3},
// c = cbrt(alpha/8) k0 / pi.
double puiseux_coefficient(double k0, double alpha);

// k0 + eps at theta0 + delta, eps the leading-order branch value.
// Throws InvalidArgument for delta = 0.
Complex seed_from_singular_point(const SingularPoint& sp, double alpha, double delta,
                                 Branch branch);

struct ResonanceSample {
  double theta;
  Complex k;
  double residual_abs;
};

struct ResonanceCurve {
  Parity parity;
  Branch branch;
  std::vector<ResonanceSample> samples;
  std::string termination;  // completed | singular_point | left_half_plane | step_underflow
};

struct ContinuationOptions {
  double max_step = 1e-2;
  double min_cap = 1e-5;    // smallest step cap imposed near singular points
  double min_step = 1e-7;   // give up below this step
  double snap_tol = 1e-5;
  double newton_tol = 1e-12;
  bool exact_derivative = false;
  int max_samples = 200000;
};

// Predictor-corrector continuation in theta from a point on F = 0 towards
// theta_stop. Throws InvalidArgument if |F(start)| >= 1e-9.
ResonanceCurve continue_curve(double theta_start, Complex k_start, double alpha, Parity parity,
                              Branch branch, double theta_stop,
                              const ContinuationOptions& opt = {});

struct BranchFit {
  double exponent;
  double coefficient;
  int samples;
};

// Log-log fit of |k - k0| against |theta - theta0| along one branch for
// |theta - theta0| in [delta_lo, delta_hi], on both sides of theta0 when
// both lie in [0, pi]. Throws InsufficientData below 8 samples.
BranchFit fit_branch_exponent(const SingularPoint& sp, double alpha, Branch branch,
                              double delta_lo = 1e-3, double delta_hi = 1e-1,
                              int per_side = 16);

// Constant C in k = k0 - C theta^4 for the gap eigenvalue leaving the
// non-integer band edge k0: C = (k0^2 / 8)(alpha/4)^3 / (k0 pi + sin k0 pi).
double gentle_coefficient(double k0, double alpha);

// Zeros of F inside the rectangle, counted by the argument principle.
int count_roots_in_box(double alpha, double theta, Parity parity, double re_lo, double re_hi,
                       double im_lo, double im_hi);

}  // namespace chain

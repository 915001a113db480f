#pragma once

// Elementary scalar functions of the ring-chain model with delta couplings.
//
// Units: hbar = 2m = 1, ring circumference 2*pi, so each semicircle has
// length pi. The coupling alpha enters through the vertex condition
// (sum of outgoing derivatives) = alpha * (value).
//
//   g(k)       = cos(k pi)   + alpha/(4k)     sin(k pi)       (Floquet half-trace)
//   g~(kappa)  = cosh(kap pi) + alpha/(4kap)  sinh(kap pi)    (g at k = i kappa)
//   f(k)       = -cos(k pi) + sin^2(k pi) / (alpha/(4k) sin(k pi) + sgn(g) sqrt(g^2 - 1))
//   f~(kappa)  = -cosh(kap pi) - sinh^2(kap pi) / (alpha/(4kap) sinh(kap pi) +- sqrt(g~^2 - 1))
//
// f and f~ are the right-hand sides of the even-sector bound-state
// conditions cos(k theta) = f(k) and cosh(kappa theta) = f~(kappa).

#include <complex>
#include <numbers>
#include <utility>

namespace chain {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Shared numeric conventions.
inline constexpr double kRootTol = 1e-12;       // guaranteed accuracy of roots in k
inline constexpr double kResidualTol = 1e-10;   // accepted residual of a returned root
inline constexpr double kIntegerGuard = 1e-9;   // |k - round(k)| below this counts as integer
inline constexpr double kSeriesCutoff = 1e-4;   // below this |k| use series for sin(k pi)/k
inline constexpr double kMembershipTol = 1e-12; // slack in |g| <= 1 band membership
inline constexpr double kBorderlineCoupling = -8.0 / kPi;  // alpha where 0 is a band edge

// A real wavenumber within kIntegerGuard of a positive integer.
bool is_integer_wavenumber(double k);

// sin(k pi)/k and sinh(kappa pi)/kappa, continuous through 0 (value pi).
double sin_pi_over(double k);
double sinh_pi_over(double kappa);
Complex sin_pi_over(Complex k);

double g(double k, double alpha);
Complex g(Complex k, double alpha);
double g_tilde(double kappa, double alpha);

// Throws DomainError inside a band (|g| < 1) and InvalidArgument at integers.
double f(double k, double alpha);
double f_tilde(double kappa, double alpha);

// Constant C in f~(x) = -1 - C x^2 + o(x^2), valid for alpha < -8/pi.
double f_tilde_curvature(double alpha);

struct FloquetPhase {
  Complex phase;        // e^{i theta_q}
  double quasimomentum; // arg(phase) in [-pi, pi)
};

// Roots of z^2 - 2 g(k) z + 1 = 0 ordered so that |first| >= |second|.
// k = 0 reproduces the zero-energy equation z^2 - (2 + alpha pi/2) z + 1 = 0.
std::pair<FloquetPhase, FloquetPhase> floquet_phases(Complex k, double alpha);

}  // namespace chain

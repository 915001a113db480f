#pragma once

// Discrete spectrum of the chain with one bent ring. The bend splits the
// problem into an even sector (H+) and an odd sector (H-):
//
//   H+ :  cos(k theta) = f(k),     cosh(kappa theta) = f~(kappa)
//   H- : -cos(k theta) = f(k),    -cosh(kappa theta) = f~(kappa)
//
// with energies E = k^2 and E = -kappa^2 respectively.

#include <optional>
#include <vector>

#include "chain/chain_model.hpp"

namespace chain {

enum class Parity { Even, Odd };

const char* parity_symbol(Parity p);  // "+" or "-"

// Closed k-interval where |g| >= 1. For n >= 1 it contains n; n = 0 is the
// interval touching zero for alpha > 0.
struct GapInterval {
  int n;
  double k_lo;
  double k_hi;
  int sign_g;
};

// Throws InvalidArgument for alpha = 0 or n_max < 1.
std::vector<GapInterval> gap_intervals(double alpha, int n_max);

// Angles in [0, pi) at which the gap-n curve of the given parity touches k = n.
std::vector<double> singular_angles(int n, Parity parity);
bool is_singular_angle(double theta, int n, Parity parity, double tol = 1e-9);

// +-cos(k theta) - f(k) and +-cosh(kappa theta) - f~(kappa).
double spectral_residual(double k, double alpha, double theta, Parity parity);
double spectral_residual_negative(double kappa, double alpha, double theta, Parity parity);

// All accepted roots of the gap condition in gap \ {n}, ascending.
std::vector<double> gap_roots(double alpha, double theta, const GapInterval& gap, Parity parity,
                              double residual_tol = kResidualTol);
std::optional<double> solve_gap(double alpha, double theta, const GapInterval& gap,
                                Parity parity, double residual_tol = kResidualTol);

// Roots kappa > 0 of the negative-energy condition within (0, kappa0 + 1].
std::vector<double> negative_roots(double alpha, double theta, Parity parity,
                                   double residual_tol = kResidualTol);
// Even: the root below the lowest band. Odd: the root in the gap between
// the lowest band and zero (only present for alpha < -8/pi).
std::optional<double> solve_negative(double alpha, double theta, Parity parity,
                                     double residual_tol = kResidualTol);

// Unique root of kappa tanh(kappa pi) = -alpha/2. Throws for alpha >= 0.
double kappa0(double alpha);

// k tan(k pi) - alpha/2; zero where the two sectors share an eigenvalue.
double double_eigenvalue_residual(double k, double alpha);

struct EigenvalueRecord {
  double k;         // k for positive energy, kappa when negative is set
  bool negative;
  double energy;
  Parity parity;    // Even for merged double eigenvalues
  double theta;
  int gap_index;
  int multiplicity;
  double residual;
};

// Gap index 0 is the gap below the lowest band (alpha < 0) or I0 (alpha > 0).
// Gap index n >= 1 is I_n, extended to negative energies for alpha < -8/pi.
std::vector<EigenvalueRecord> gap_eigenvalues(double alpha, double theta, int gap_index,
                                              Parity parity, double residual_tol = kResidualTol);

// Both sectors in every gap whose lower edge lies below e_max, with
// coinciding roots merged into multiplicity-2 records.
std::vector<EigenvalueRecord> eigenvalues_at(double alpha, double theta, double e_max,
                                             double residual_tol = kResidualTol);

struct CurveSample {
  double theta;
  std::optional<double> s;  // signed wavenumber, E = s|s|; empty where no root
  double residual;
};

struct SpectralCurve {
  Parity parity;
  int gap_index;
  std::vector<CurveSample> samples;
};

inline double energy_of_signed(double s) { return s * (s < 0 ? -s : s); }

// Samples the gap curve on an increasing grid in (0, pi). Throws
// ContinuationError if an energy step exceeds ten times what the previous
// steps predict.
SpectralCurve trace_eigenvalue_curve(double alpha, Parity parity, int gap_index,
                                     const std::vector<double>& theta_grid,
                                     double residual_tol = kResidualTol);

}  // namespace chain

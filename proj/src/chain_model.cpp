#include "chain/chain_model.hpp"

#include <cmath>

#include "chain/errors.hpp"

namespace chain {

namespace {

// |g| may sit a few ulps below 1 at computed band edges.
constexpr double kEdgeSlack = 1e-10;

double quasimomentum_of(Complex phase) {
  double q = std::arg(phase);
  return q >= kPi ? q - 2.0 * kPi : q;
}

}  // namespace

bool is_integer_wavenumber(double k) {
  return k > 0.5 && std::abs(k - std::round(k)) < kIntegerGuard;
}

double sin_pi_over(double k) {
  if (std::abs(k) < kSeriesCutoff) {
    const double x2 = (k * kPi) * (k * kPi);
    return kPi * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0));
  }
  return std::sin(k * kPi) / k;
}

double sinh_pi_over(double kappa) {
  if (std::abs(kappa) < kSeriesCutoff) {
    const double x2 = (kappa * kPi) * (kappa * kPi);
    return kPi * (1.0 + x2 / 6.0 * (1.0 + x2 / 20.0));
  }
  return std::sinh(kappa * kPi) / kappa;
}

Complex sin_pi_over(Complex k) {
  if (std::abs(k) < kSeriesCutoff) {
    const Complex x2 = (k * kPi) * (k * kPi);
    return kPi * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0));
  }
  return std::sin(k * kPi) / k;
}

double g(double k, double alpha) {
  return std::cos(k * kPi) + 0.25 * alpha * sin_pi_over(k);
}

Complex g(Complex k, double alpha) {
  return std::cos(k * kPi) + 0.25 * alpha * sin_pi_over(k);
}

double g_tilde(double kappa, double alpha) {
  return std::cosh(kappa * kPi) + 0.25 * alpha * sinh_pi_over(kappa);
}

double f(double k, double alpha) {
  if (!(k > 0.0)) throw InvalidArgument("f: wavenumber must be positive");
  if (is_integer_wavenumber(k)) throw InvalidArgument("f: integer wavenumber");
  const double gv = g(k, alpha);
  const double ag = std::abs(gv);
  if (ag < 1.0 - kEdgeSlack) throw DomainError("f: wavenumber lies inside a band");
  const double root = std::sqrt(std::max(0.0, (ag - 1.0) * (ag + 1.0)));
  const double s = std::sin(k * kPi);
  const double denom = 0.25 * alpha * sin_pi_over(k) + std::copysign(root, gv);
  return -std::cos(k * kPi) + s * s / denom;
}

double f_tilde(double kappa, double alpha) {
  if (!(kappa > 0.0)) throw InvalidArgument("f_tilde: kappa must be positive");
  const double gv = g_tilde(kappa, alpha);
  const double ag = std::abs(gv);
  if (ag < 1.0 - kEdgeSlack) throw DomainError("f_tilde: kappa lies inside a band");
  const double root = std::sqrt(std::max(0.0, (ag - 1.0) * (ag + 1.0)));
  const double sh = std::sinh(kappa * kPi);
  const double denom = 0.25 * alpha * sinh_pi_over(kappa) + std::copysign(root, gv);
  return -std::cosh(kappa * kPi) - sh * sh / denom;
}

double f_tilde_curvature(double alpha) {
  if (!(alpha < kBorderlineCoupling)) {
    throw InvalidArgument("f_tilde_curvature: requires alpha < -8/pi");
  }
  // g~(0+) = 1 + a < -1, so the lower root sign applies in the denominator.
  const double a = alpha * kPi / 4.0;
  return (0.5 + 1.0 / (a - std::sqrt(a * a + 2.0 * a))) * kPi * kPi;
}

std::pair<FloquetPhase, FloquetPhase> floquet_phases(Complex k, double alpha) {
  const Complex gv = g(k, alpha);
  const Complex w = std::sqrt((gv - 1.0) * (gv + 1.0));
  Complex big = gv + w;
  if (std::abs(gv - w) > std::abs(big)) big = gv - w;
  const Complex small = 1.0 / big;
  return {FloquetPhase{big, quasimomentum_of(big)},
          FloquetPhase{small, quasimomentum_of(small)}};
}

}  // namespace chain

#include "chain/resonance.hpp"

#include <algorithm>
#include <cmath>

#include "chain/errors.hpp"

namespace chain {

namespace {

constexpr double kStartResidualTol = 1e-9;
// Newton stops once the update is below this, relative to 1 + |k|.
constexpr double kStepTol = 1e-14;
constexpr double kExactRadius = 1e-3;

struct Terms {
  Complex ct, st, cp, sp;
  double s;
};

Terms terms(Complex k, double theta, Parity parity) {
  return {std::cos(k * theta), std::sin(k * theta), std::cos(k * kPi), std::sin(k * kPi),
          parity == Parity::Even ? 1.0 : -1.0};
}

double singular_distance(double theta, Complex k, const SingularPoint& sp) {
  return std::hypot(theta - sp.theta0, std::abs(k - sp.k0));
}

// Singular points plus, for the odd sector, the triple zeros at
// (pi, n) where curves also end.
std::vector<SingularPoint> nearby_singular_points(Complex k, Parity parity) {
  const int top = static_cast<int>(std::ceil(std::abs(k))) + 2;
  auto sps = singular_points(top, parity);
  if (parity == Parity::Odd) {
    for (int n = 1; n <= top; ++n) sps.push_back({n, 0, parity, kPi, static_cast<double>(n)});
  }
  return sps;
}

const SingularPoint* nearest(const std::vector<SingularPoint>& sps, double theta, Complex k,
                             double* dist) {
  const SingularPoint* best = nullptr;
  *dist = 1e300;
  for (const auto& sp : sps) {
    const double d = singular_distance(theta, k, sp);
    if (d < *dist) {
      *dist = d;
      best = &sp;
    }
  }
  return best;
}

}  // namespace

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::Real: return "real";
    case Branch::Upper: return "upper";
    case Branch::Lower: return "lower";
  }
  return "?";
}

SingularPoint make_singular_point(int n, int ell, Parity parity) {
  const int ell_max = parity == Parity::Even ? (n + 1) / 2 : n / 2;
  if (n < 1 || ell < 1 || ell > ell_max) {
    throw InvalidArgument("make_singular_point: ell out of range for n");
  }
  const int num = parity == Parity::Even ? n + 1 - 2 * ell : n - 2 * ell;
  return {n, ell, parity, num * kPi / n, static_cast<double>(n)};
}

std::vector<SingularPoint> singular_points(int n_max, Parity parity) {
  std::vector<SingularPoint> out;
  for (int n = 1; n <= n_max; ++n) {
    const int ell_max = parity == Parity::Even ? (n + 1) / 2 : n / 2;
    for (int l = 1; l <= ell_max; ++l) out.push_back(make_singular_point(n, l, parity));
  }
  return out;
}

Complex resonance_residual(Complex k, double alpha, double theta, Parity parity) {
  // Evaluated about a reference point (theta0, n) with sin(n theta0) = 0 and
  // cos(n theta0) = -s (-1)^n. With u = k theta - n theta0 and v = (k - n) pi,
  //   cos(k theta) = -s (-1)^n cos u,  cos(k pi) = (-1)^n cos v,
  // which turns every near-cancelling factor into products of sines.
  const double s = parity == Parity::Even ? 1.0 : -1.0;
  const int n = std::max(1, static_cast<int>(std::lround(k.real())));
  // theta0 = num pi / n with num of the parity that makes cos(n theta0) right.
  const int want = parity == Parity::Even ? (n + 1) % 2 : n % 2;
  int num = static_cast<int>(std::lround(theta * n / kPi));
  if (((num % 2) + 2) % 2 != want) {
    num += (theta * n / kPi > num) ? 1 : -1;
  }
  const double theta0 = num * kPi / n;
  const Complex eps = k - static_cast<double>(n);
  const Complex u = eps * theta + static_cast<double>(n) * (theta - theta0);
  const Complex v = eps * kPi;
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const Complex su = std::sin(0.5 * u);
  const Complex sv = std::sin(0.5 * v);
  const Complex a = 2.0 * su * su + std::cos(u) * 2.0 * sv * sv;
  const Complex diff = 2.0 * std::sin(0.5 * (u + v)) * std::sin(0.5 * (u - v));
  const Complex sin_v = std::sin(v);
  const Complex d = diff * diff + sin_v * sin_v;
  return alpha * a * sign * diff - 2.0 * k * sign * sin_v * d;
}

Complex resonance_residual_direct(Complex k, double alpha, double theta, Parity parity) {
  const Terms t = terms(k, theta, parity);
  const Complex a = 1.0 + t.s * t.ct * t.cp;
  const Complex b = t.s * t.ct + t.cp;
  const Complex d = 1.0 + 2.0 * t.s * t.ct * t.cp + t.ct * t.ct;
  return alpha * a * b - 2.0 * k * t.sp * d;
}

Complex resonance_residual_dk(Complex k, double alpha, double theta, Parity parity) {
  const Terms t = terms(k, theta, parity);
  const Complex ct1 = -theta * t.st;
  const Complex cp1 = -kPi * t.sp;
  const Complex sp1 = kPi * t.cp;
  const Complex a = 1.0 + t.s * t.ct * t.cp;
  const Complex b = t.s * t.ct + t.cp;
  const Complex d = 1.0 + 2.0 * t.s * t.ct * t.cp + t.ct * t.ct;
  const Complex a1 = t.s * (ct1 * t.cp + t.ct * cp1);
  const Complex b1 = t.s * ct1 + cp1;
  const Complex d1 = 2.0 * t.s * (ct1 * t.cp + t.ct * cp1) + 2.0 * t.ct * ct1;
  return alpha * (a1 * b + a * b1) - 2.0 * (t.sp * d + k * sp1 * d + k * t.sp * d1);
}

Complex resonance_residual_dtheta(Complex k, double alpha, double theta, Parity parity) {
  const Terms t = terms(k, theta, parity);
  const Complex ct1 = -k * t.st;
  const Complex a = 1.0 + t.s * t.ct * t.cp;
  const Complex b = t.s * t.ct + t.cp;
  const Complex a1 = t.s * ct1 * t.cp;
  const Complex b1 = t.s * ct1;
  const Complex d1 = 2.0 * t.s * ct1 * t.cp + 2.0 * t.ct * ct1;
  return alpha * (a1 * b + a * b1) - 2.0 * k * t.sp * d1;
}

Complex resonance_residual_dk_fd(Complex k, double alpha, double theta, Parity parity) {
  const double h = 1e-7 * (1.0 + std::abs(k));
  return (resonance_residual(k + h, alpha, theta, parity) -
          resonance_residual(k - h, alpha, theta, parity)) /
         (2.0 * h);
}

NewtonResult newton_resonance(Complex k, double alpha, double theta, Parity parity, double tol,
                              int max_iter, bool exact_derivative) {
  Complex fk = resonance_residual(k, alpha, theta, parity);
  if (fk == Complex{0.0, 0.0}) return {k, 0.0, 0, true};
  for (int it = 1; it <= max_iter; ++it) {
    const Complex dk = exact_derivative ? resonance_residual_dk(k, alpha, theta, parity)
                                        : resonance_residual_dk_fd(k, alpha, theta, parity);
    if (dk == Complex{0.0, 0.0} || !std::isfinite(std::abs(dk))) break;
    const Complex step = fk / dk;
    k -= step;
    fk = resonance_residual(k, alpha, theta, parity);
    if (!std::isfinite(std::abs(fk))) break;
    if (fk == Complex{0.0, 0.0} || std::abs(step) <= kStepTol * (1.0 + std::abs(k))) {
      return {k, std::abs(fk), it, std::abs(fk) < tol};
    }
  }
  return {k, std::abs(fk), max_iter, false};
}

double puiseux_coefficient(double k0, double alpha) { return std::cbrt(alpha / 8.0) * k0 / kPi; }

Complex seed_from_singular_point(const SingularPoint& sp, double alpha, double delta,
                                 Branch branch) {
  if (delta == 0.0) throw InvalidArgument("seed_from_singular_point: delta must be nonzero");
  const double eps = puiseux_coefficient(sp.k0, alpha) * std::pow(std::abs(delta), 4.0 / 3.0);
  if (branch == Branch::Real) return sp.k0 + eps;
  // The other two cube roots of eps^3; upper has Im > 0.
  const Complex rot = std::polar(1.0, 2.0 * kPi / 3.0);
  Complex e1 = eps * rot;
  Complex e2 = eps * std::conj(rot);
  if (e1.imag() < e2.imag()) std::swap(e1, e2);
  return sp.k0 + (branch == Branch::Upper ? e1 : e2);
}

ResonanceCurve continue_curve(double theta_start, Complex k_start, double alpha, Parity parity,
                              Branch branch, double theta_stop, const ContinuationOptions& opt) {
  const double r0 = std::abs(resonance_residual(k_start, alpha, theta_start, parity));
  if (!(r0 < kStartResidualTol)) {
    throw InvalidArgument("continue_curve: start point is not on the curve");
  }
  ResonanceCurve curve{parity, branch, {{theta_start, k_start, r0}}, "completed"};
  const double dir = theta_stop >= theta_start ? 1.0 : -1.0;

  std::vector<SingularPoint> sps = nearby_singular_points(k_start, parity);
  double d_start = 0.0;
  const SingularPoint* origin = nearest(sps, theta_start, k_start, &d_start);
  // Seeds sit well inside this radius of the point they were launched from.
  const bool from_singular = origin != nullptr && d_start < 0.05;
  const SingularPoint origin_sp = from_singular ? *origin : SingularPoint{};

  double theta = theta_start;
  Complex k = k_start;
  double h = opt.max_step;
  bool have_prev = false;
  double theta_prev = theta;
  Complex k_prev = k;

  while (dir * (theta_stop - theta) > 0.0) {
    if (static_cast<int>(curve.samples.size()) >= opt.max_samples) {
      curve.termination = "step_underflow";
      break;
    }
    sps = nearby_singular_points(k, parity);
    double d_sing = 1e300;
    for (const auto& sp : sps) {
      if (from_singular && sp.n == origin_sp.n && sp.ell == origin_sp.ell) continue;
      d_sing = std::min(d_sing, singular_distance(theta, k, sp));
    }
    const double cap = std::clamp(0.5 * d_sing, opt.min_cap, opt.max_step);
    h = std::min({h, cap, dir * (theta_stop - theta)});

    const double theta_new = theta + dir * h;
    Complex k_pred;
    if (have_prev) {
      k_pred = k + (k - k_prev) * ((theta_new - theta) / (theta - theta_prev));
    } else {
      const Complex fk = resonance_residual_dk(k, alpha, theta, parity);
      const Complex ft = resonance_residual_dtheta(k, alpha, theta, parity);
      k_pred = k - (theta_new - theta) * ft / fk;
    }
    // Next to a singular point the branches are closer than the difference
    // step, so the exact derivative takes over there.
    const bool exact = opt.exact_derivative || d_sing < kExactRadius;
    const NewtonResult nr =
        newton_resonance(k_pred, alpha, theta_new, parity, opt.newton_tol, 60, exact);
    const double moved = std::abs(k_pred - k);
    bool ok = nr.converged && nr.residual_abs < kStartResidualTol &&
              std::abs(nr.k - k_pred) <= 0.5 * moved + 1e-12;
    if (ok && branch != Branch::Real && k.imag() != 0.0 && nr.k.imag() * k.imag() <= 0.0) {
      ok = false;  // complex branches reach the real axis only at singular points
    }
    if (!ok) {
      h *= 0.5;
      if (h < opt.min_step) {
        curve.termination = "step_underflow";
        break;
      }
      continue;
    }
    if (nr.k.real() < 0.0) {
      curve.termination = "left_half_plane";
      break;
    }
    theta_prev = theta;
    k_prev = k;
    have_prev = true;
    theta = theta_new;
    k = nr.k;
    curve.samples.push_back({theta, k, nr.residual_abs});

    for (const auto& sp : sps) {
      if (from_singular && sp.n == origin_sp.n && sp.ell == origin_sp.ell) continue;
      if (singular_distance(theta, k, sp) < opt.snap_tol) {
        curve.samples.push_back({sp.theta0, Complex{sp.k0, 0.0}, 0.0});
        curve.termination = "singular_point";
        return curve;
      }
    }
    h = std::min(1.5 * h, opt.max_step);
  }
  return curve;
}

BranchFit fit_branch_exponent(const SingularPoint& sp, double alpha, Branch branch,
                              double delta_lo, double delta_hi, int per_side) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (double side : {1.0, -1.0}) {
    const double t_end = sp.theta0 + side * delta_hi;
    if (t_end < 0.0 || t_end > kPi) continue;
    Complex k = seed_from_singular_point(sp, alpha, side * delta_lo, branch);
    double d_prev = 0.0;
    bool started = false;
    for (int i = 0; i < per_side; ++i) {
      const double d = delta_lo * std::pow(delta_hi / delta_lo, static_cast<double>(i) / (per_side - 1));
      // Walk from the previous target with the leading-order scaling as
      // predictor, halving the increment whenever Newton strays.
      double d_cur = started ? d_prev : d;
      Complex k_cur = k;
      bool ok = true;
      int guard = 0;
      while (ok && (!started || d_cur < d)) {
        double d_next = started ? d : d_cur;
        for (;;) {
          const Complex pred =
              started ? sp.k0 + (k_cur - sp.k0) * std::pow(d_next / d_cur, 4.0 / 3.0) : k_cur;
          const NewtonResult nr = newton_resonance(pred, alpha, sp.theta0 + side * d_next,
                                                   sp.parity);
          const bool same_branch =
              branch == Branch::Real ? std::abs(nr.k.imag()) < 1e-12
                                     : nr.k.imag() * pred.imag() > 0.0;
          if (nr.converged && same_branch &&
              std::abs(nr.k - pred) <= 0.25 * std::abs(pred - sp.k0)) {
            k_cur = nr.k;
            d_cur = d_next;
            started = true;
            break;
          }
          if (!started || ++guard > 60) {
            ok = false;
            break;
          }
          d_next = 0.5 * (d_cur + d_next);
        }
      }
      if (!ok) break;
      k = k_cur;
      d_prev = d;
      xs.push_back(std::log(d));
      ys.push_back(std::log(std::abs(k - sp.k0)));
    }
  }
  if (xs.size() < 8) throw InsufficientData("fit_branch_exponent: fewer than 8 samples");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  return {slope, std::exp(intercept), static_cast<int>(xs.size())};
}

double gentle_coefficient(double k0, double alpha) {
  const double denom = k0 * kPi + std::sin(k0 * kPi);
  if (denom == 0.0) throw InvalidArgument("gentle_coefficient: k0 pi + sin k0 pi vanishes");
  const double a = alpha / 4.0;
  return k0 * k0 / 8.0 * a * a * a / denom;
}

int count_roots_in_box(double alpha, double theta, Parity parity, double re_lo, double re_hi,
                       double im_lo, double im_hi) {
  if (!(re_hi > re_lo) || !(im_hi > im_lo)) throw InvalidArgument("count_roots_in_box: empty box");
  const Complex corners[5] = {{re_lo, im_lo}, {re_hi, im_lo}, {re_hi, im_hi}, {re_lo, im_hi},
                              {re_lo, im_lo}};
  auto F = [&](Complex z) { return resonance_residual(z, alpha, theta, parity); };
  constexpr double kMaxTurn = kPi / 8.0;
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const Complex a = corners[e];
    const Complex b = corners[e + 1];
    constexpr int kBase = 256;
    // Explicit stack of (t0, t1, F(t0), F(t1)) segments, refined until the
    // phase turns by less than kMaxTurn per segment.
    struct Seg { double t0, t1; Complex f0, f1; int depth; };
    std::vector<Seg> stack;
    for (int i = kBase - 1; i >= 0; --i) {
      const double t0 = static_cast<double>(i) / kBase;
      const double t1 = static_cast<double>(i + 1) / kBase;
      stack.push_back({t0, t1, F(a + (b - a) * t0), F(a + (b - a) * t1), 0});
    }
    while (!stack.empty()) {
      const Seg s = stack.back();
      stack.pop_back();
      if (std::abs(s.f0) == 0.0 || std::abs(s.f1) == 0.0) {
        throw DomainError("count_roots_in_box: zero on the contour");
      }
      const double turn = std::arg(s.f1 / s.f0);
      if (std::abs(turn) > kMaxTurn && s.depth < 40) {
        const double tm = 0.5 * (s.t0 + s.t1);
        const Complex fm = F(a + (b - a) * tm);
        stack.push_back({tm, s.t1, fm, s.f1, s.depth + 1});
        stack.push_back({s.t0, tm, s.f0, fm, s.depth + 1});
        continue;
      }
      total += turn;
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

}  // namespace chain

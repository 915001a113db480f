#include "chain/discrete_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chain/band_structure.hpp"
#include "chain/errors.hpp"
#include "chain/roots.hpp"

namespace chain {

namespace {

constexpr int kGapSamples = 1024;
constexpr double kIntegerWindow = 1e-6;
constexpr double kSingularTol = 1e-9;
constexpr double kMergeTol = 1e-9;
constexpr double kDoubleResidualTol = 1e-6;
constexpr double kJumpFactor = 10.0;
// Next to a non-integer band edge f behaves like a square root, so even a
// root bracketed to adjacent doubles can leave a residual near |f'| ulp,
// up to about 1e-7. Poles leave residuals of order 1/ulp.
constexpr double kResolvedTol = 1e-6;

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

double parity_sign(Parity p) { return p == Parity::Even ? 1.0 : -1.0; }

// Roots within a few ulps of a non-integer gap edge are eigenvalues that
// have merged into the band.
bool at_edge(double k, double edge) {
  return std::abs(k - edge) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(edge);
}

std::vector<double> gap_grid(double a, double b, int n, bool n_at_lo, bool n_at_hi) {
  std::vector<double> xs = roots::linspace(a, b, kGapSamples);
  // Roots approach n like |theta - theta0|^{4/3}; resolve them down to
  // just outside the integer guard.
  for (double e = 6.0; e <= 8.75; e += 0.25) {
    const double d = std::pow(10.0, -e);
    if (n_at_lo) xs.push_back(n + d);
    if (n_at_hi) xs.push_back(n - d);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

struct KappaRoot {
  double kappa;
  int gap_index;
};

std::vector<KappaRoot> kappa_roots(double alpha, double theta, Parity parity, double residual_tol) {
  std::vector<KappaRoot> out;
  if (alpha >= 0.0) return out;
  const auto edges = band_edges_kappa(alpha);
  if (edges.empty()) return out;
  const double top = kappa0(alpha) + 1.0;
  auto h = [&](double x) {
    try {
      return spectral_residual_negative(x, alpha, theta, parity);
    } catch (const DomainError&) {
      return nan();
    }
  };
  auto scan = [&](double a, double b, int gap_index) {
    if (!(b > a)) return;
    const auto grid = roots::linspace(a, b, kGapSamples);
    for (const auto& r : roots::scan_roots(h, grid, 0.0, residual_tol, kResolvedTol)) {
      if (gap_index == 0 && at_edge(r.x, a)) continue;
      if (gap_index == 1 && at_edge(r.x, b)) continue;
      out.push_back({r.x, gap_index});
    }
  };
  if (edges.size() >= 2) scan(kIntegerWindow, edges.front(), 1);
  scan(edges.back(), top, 0);
  std::sort(out.begin(), out.end(), [](auto& l, auto& r) { return l.kappa < r.kappa; });
  return out;
}

EigenvalueRecord positive_record(double k, double alpha, double theta, Parity parity, int gap) {
  return {k, false, k * k, parity, theta, gap, 1,
          std::abs(spectral_residual(k, alpha, theta, parity))};
}

EigenvalueRecord negative_record(double kappa, double alpha, double theta, Parity parity,
                                 int gap) {
  return {kappa, true, -kappa * kappa, parity, theta, gap, 1,
          std::abs(spectral_residual_negative(kappa, alpha, theta, parity))};
}

std::vector<EigenvalueRecord> collect(double alpha, double theta, int gap_index, Parity parity,
                                      const std::vector<GapInterval>& gaps,
                                      double residual_tol) {
  std::vector<EigenvalueRecord> out;
  if (alpha < 0.0 && gap_index <= 1) {
    for (const auto& r : kappa_roots(alpha, theta, parity, residual_tol)) {
      if (r.gap_index == gap_index) out.push_back(negative_record(r.kappa, alpha, theta, parity, gap_index));
    }
  }
  for (const auto& gap : gaps) {
    if (gap.n != gap_index) continue;
    for (double k : gap_roots(alpha, theta, gap, parity, residual_tol)) {
      out.push_back(positive_record(k, alpha, theta, parity, gap_index));
    }
  }
  return out;
}

}  // namespace

const char* parity_symbol(Parity p) { return p == Parity::Even ? "+" : "-"; }

std::vector<GapInterval> gap_intervals(double alpha, int n_max) {
  if (alpha == 0.0) throw InvalidArgument("gap_intervals: alpha = 0 has no gaps");
  if (n_max < 1) throw InvalidArgument("gap_intervals: n_max must be >= 1");
  const double top = n_max + 1.0;
  const BandSpectrum spec = compute_bands(alpha, top * top);
  std::vector<GapInterval> out;
  double lo = 0.0;
  auto emit = [&](double a, double b) {
    if (!(b > a)) return;
    const int n = static_cast<int>(std::round(alpha > 0.0 ? a : b));
    const bool touches_zero = a == 0.0;
    if (n >= 1 && n <= n_max && std::abs((alpha > 0.0 ? a : b) - n) < 1e-12) {
      out.push_back({n, a, b, n % 2 == 0 ? 1 : -1});
    } else if (alpha > 0.0 && touches_zero) {
      out.push_back({0, a, b, 1});
    }
  };
  for (const auto& band : spec.bands) {
    if (band.k_hi <= 0.0) continue;
    emit(lo, std::max(0.0, band.k_lo));
    lo = band.k_hi;
  }
  return out;
}

std::vector<double> singular_angles(int n, Parity parity) {
  std::vector<double> out;
  if (n < 1) return out;
  if (parity == Parity::Even) {
    for (int l = 1; l <= (n + 1) / 2; ++l) out.push_back((n + 1 - 2 * l) * kPi / n);
  } else {
    for (int l = 1; l <= n / 2; ++l) out.push_back((n - 2 * l) * kPi / n);
  }
  return out;
}

bool is_singular_angle(double theta, int n, Parity parity, double tol) {
  for (double t : singular_angles(n, parity)) {
    if (std::abs(theta - t) < tol) return true;
  }
  return false;
}

double spectral_residual(double k, double alpha, double theta, Parity parity) {
  return parity_sign(parity) * std::cos(k * theta) - f(k, alpha);
}

double spectral_residual_negative(double kappa, double alpha, double theta, Parity parity) {
  return parity_sign(parity) * std::cosh(kappa * theta) - f_tilde(kappa, alpha);
}

std::vector<double> gap_roots(double alpha, double theta, const GapInterval& gap, Parity parity,
                              double residual_tol) {
  if (gap.n >= 1 && is_singular_angle(theta, gap.n, parity, kSingularTol)) return {};
  const bool n_at_lo = gap.n >= 1 && gap.k_lo == gap.n;
  const bool n_at_hi = gap.n >= 1 && gap.k_hi == gap.n;
  double a = gap.k_lo;
  double b = gap.k_hi;
  if (n_at_lo) a += kIntegerWindow;
  if (n_at_hi) b -= kIntegerWindow;
  if (a == 0.0) a = kIntegerWindow;
  if (!(b > a)) return {};
  const double edge = n_at_lo ? gap.k_hi : gap.k_lo;  // the non-integer end

  auto h = [&](double k) {
    try {
      return spectral_residual(k, alpha, theta, parity);
    } catch (const DomainError&) {
      return nan();
    }
  };
  std::vector<double> out;
  const auto grid = gap_grid(a, b, gap.n, n_at_lo, n_at_hi);
  for (const auto& r : roots::scan_roots(h, grid, 0.0, residual_tol, kResolvedTol)) {
    if (edge > 0.0 && at_edge(r.x, edge)) continue;
    out.push_back(r.x);
  }
  return out;
}

std::optional<double> solve_gap(double alpha, double theta, const GapInterval& gap, Parity parity,
                                double residual_tol) {
  const auto roots = gap_roots(alpha, theta, gap, parity, residual_tol);
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

std::vector<double> negative_roots(double alpha, double theta, Parity parity,
                                   double residual_tol) {
  std::vector<double> out;
  for (const auto& r : kappa_roots(alpha, theta, parity, residual_tol)) out.push_back(r.kappa);
  return out;
}

std::optional<double> solve_negative(double alpha, double theta, Parity parity,
                                     double residual_tol) {
  const int wanted = parity == Parity::Even ? 0 : 1;
  for (const auto& r : kappa_roots(alpha, theta, parity, residual_tol)) {
    if (r.gap_index == wanted) return r.kappa;
  }
  return std::nullopt;
}

double kappa0(double alpha) {
  if (!(alpha < 0.0)) throw InvalidArgument("kappa0: requires alpha < 0");
  const double target = -0.5 * alpha;
  auto h = [target](double x) { return x * std::tanh(x * kPi) - target; };
  double hi = target + 1.0;
  while (h(hi) < 0.0) hi *= 2.0;
  return roots::bisect(h, 0.0, hi, h(0.0), h(hi)).x;
}

double double_eigenvalue_residual(double k, double alpha) {
  const double c = std::cos(k * kPi);
  const double s = std::sin(k * kPi);
  if (c == 0.0) return std::copysign(std::numeric_limits<double>::infinity(), k * s);
  return k * s / c - 0.5 * alpha;
}

std::vector<EigenvalueRecord> gap_eigenvalues(double alpha, double theta, int gap_index,
                                              Parity parity, double residual_tol) {
  const auto gaps = gap_intervals(alpha, std::max(1, gap_index));
  return collect(alpha, theta, gap_index, parity, gaps, residual_tol);
}

std::vector<EigenvalueRecord> eigenvalues_at(double alpha, double theta, double e_max,
                                             double residual_tol) {
  const int n_max = static_cast<int>(std::ceil(std::sqrt(std::max(e_max, 1.0)))) + 1;
  const auto gaps = gap_intervals(alpha, n_max);
  std::vector<int> indices;
  if (alpha < 0.0) indices.push_back(0);
  for (const auto& gap : gaps) {
    if (gap.k_lo * gap.k_lo < e_max) indices.push_back(gap.n);
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());

  std::vector<EigenvalueRecord> out;
  for (int idx : indices) {
    auto even = collect(alpha, theta, idx, Parity::Even, gaps, residual_tol);
    auto odd = collect(alpha, theta, idx, Parity::Odd, gaps, residual_tol);
    for (auto& e : even) {
      auto match = std::find_if(odd.begin(), odd.end(), [&](const EigenvalueRecord& o) {
        return !e.negative && !o.negative && std::abs(o.k - e.k) < kMergeTol &&
               std::abs(double_eigenvalue_residual(e.k, alpha)) < kDoubleResidualTol;
      });
      if (match != odd.end()) {
        e.multiplicity = 2;
        e.residual = std::max(e.residual, match->residual);
        odd.erase(match);
      }
    }
    out.insert(out.end(), even.begin(), even.end());
    out.insert(out.end(), odd.begin(), odd.end());
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& l, const auto& r) { return l.energy < r.energy; });
  return out;
}

SpectralCurve trace_eigenvalue_curve(double alpha, Parity parity, int gap_index,
                                     const std::vector<double>& theta_grid, double residual_tol) {
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    const double t = theta_grid[i];
    if (!(t > 0.0 && t < kPi) || (i > 0 && !(t > theta_grid[i - 1]))) {
      throw InvalidArgument("trace_eigenvalue_curve: grid must increase strictly inside (0, pi)");
    }
  }
  SpectralCurve curve{parity, gap_index, {}};
  const auto gaps = gap_intervals(alpha, std::max(1, gap_index));
  // Contiguous run of the current branch: (theta, E).
  std::vector<std::pair<double, double>> run;
  for (double theta : theta_grid) {
    const auto recs = collect(alpha, theta, gap_index, parity, gaps, residual_tol);
    if (recs.empty()) {
      curve.samples.push_back({theta, std::nullopt, 0.0});
      run.clear();
      continue;
    }
    double predicted = run.empty() ? recs.front().energy : run.back().second;
    if (run.size() >= 2) {
      const auto& [t1, e1] = run[run.size() - 1];
      const auto& [t0, e0] = run[run.size() - 2];
      predicted = e1 + (e1 - e0) * (theta - t1) / (t1 - t0);
    }
    const auto best = std::min_element(recs.begin(), recs.end(), [&](auto& l, auto& r) {
      return std::abs(l.energy - predicted) < std::abs(r.energy - predicted);
    });
    const double energy = best->energy;
    if (run.size() >= 2) {
      const std::size_t m = run.size();
      const double step = energy - run[m - 1].second;
      double scale = std::abs(predicted - run[m - 1].second);
      scale = std::max(scale, std::abs(run[m - 1].second - run[m - 2].second));
      if (m >= 3) scale = std::max(scale, std::abs(run[m - 2].second - run[m - 3].second));
      if (std::abs(step) > kJumpFactor * scale + 1e-12) {
        throw ContinuationError("trace_eigenvalue_curve: energy jumps at theta = " +
                                std::to_string(theta));
      }
    }
    const double s = best->negative ? -best->k : best->k;
    curve.samples.push_back({theta, s, best->residual});
    run.emplace_back(theta, energy);
  }
  return curve;
}

}  // namespace chain

#pragma once

// Bracketing root finders shared by the band, gap and negative-energy
// solvers. Everything here works on scalar real functions.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace chain::roots {

struct Root {
  double x;
  double residual;
  bool resolved = false;  // bracket shrank to adjacent doubles
};

// Bisection on [lo, hi] with f(lo), f(hi) of opposite sign. Stops once the
// bracket is no wider than xtol, or when it can no longer shrink in double
// precision (xtol = 0). Returns the bracket end with the smaller residual.
template <class Fn>
Root bisect(Fn&& fn, double lo, double hi, double f_lo, double f_hi, double xtol = 0.0) {
  if (f_lo == 0.0) return {lo, 0.0};
  if (f_hi == 0.0) return {hi, 0.0};
  bool resolved = false;
  for (int it = 0; it < 2200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) {
      resolved = true;
      break;
    }
    if (hi - lo <= xtol) break;
    const double fm = fn(mid);
    if (fm == 0.0) return {mid, 0.0};
    if (std::isnan(fm)) break;
    if (std::signbit(fm) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? Root{lo, f_lo, resolved} : Root{hi, f_hi, resolved};
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> xs(n);
  if (n == 1) {
    xs[0] = a;
    return xs;
  }
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  xs.back() = b;
  return xs;
}

// Every sign change of fn over consecutive points of an increasing grid,
// refined by bisection. A bracket is kept if its refined residual is within
// residual_tol, or if it shrank to adjacent doubles with a residual within
// resolved_tol (a steep but continuous crossing). Anything else is a pole.
template <class Fn>
std::vector<Root> scan_roots(Fn&& fn, std::span<const double> grid, double xtol,
                             double residual_tol, double resolved_tol = 0.0) {
  std::vector<Root> found;
  if (grid.size() < 2) return found;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = fn(grid[i]);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = values[i];
    const double b = values[i + 1];
    if (std::isnan(a) || std::isnan(b)) continue;
    if (a == 0.0) {
      found.push_back({grid[i], 0.0});
      continue;
    }
    if (b == 0.0) {
      // Recorded when the loop reaches i + 1, unless it is the last point.
      if (i + 2 == grid.size()) found.push_back({grid[i + 1], 0.0});
      continue;
    }
    if (std::signbit(a) == std::signbit(b)) continue;
    const Root r = bisect(fn, grid[i], grid[i + 1], a, b, xtol);
    const double res = std::abs(r.residual);
    if (res <= residual_tol || (r.resolved && res <= resolved_tol)) found.push_back(r);
  }
  return found;
}

}  // namespace chain::roots

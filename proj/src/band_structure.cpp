#include "chain/band_structure.hpp"

#include <algorithm>
#include <cmath>

#include "chain/chain_model.hpp"
#include "chain/errors.hpp"
#include "chain/roots.hpp"

namespace chain {

namespace {

// Per unit interval of k. Between consecutive samples g changes by at most
// (pi + |alpha|/4 * pi^2) / 128, well below the spacing of |g| = 1
// crossings for |alpha| <= 50.
constexpr int kSamplesPerUnit = 128;
// Offset of the first and last sample from an integer, where |g| = 1 exactly.
constexpr double kIntegerOffset = 1e-7;

struct Segment {
  double lo;
  double hi;
};

double gap_excess(double k, double alpha) { return std::abs(g(k, alpha)) - 1.0; }
double gap_excess_tilde(double kappa, double alpha) {
  return std::abs(g_tilde(kappa, alpha)) - 1.0;
}

std::vector<double> unit_grid(int m) {
  std::vector<double> xs;
  xs.reserve(kSamplesPerUnit + 1);
  xs.push_back(m + kIntegerOffset);
  for (int j = 1; j < kSamplesPerUnit; ++j) xs.push_back(m + static_cast<double>(j) / kSamplesPerUnit);
  xs.push_back(m + 1 - kIntegerOffset);
  return xs;
}

std::vector<double> edges_in_unit(int m, double alpha) {
  const auto grid = unit_grid(m);
  auto h = [alpha](double k) { return gap_excess(k, alpha); };
  std::vector<double> out;
  for (const auto& r : roots::scan_roots(h, grid, 0.0, kResidualTol)) out.push_back(r.x);
  return out;
}

// Band pieces of (0, m_end] in k, merged across integers.
std::vector<Segment> positive_band_segments(double alpha, int m_end) {
  std::vector<Segment> out;
  for (int m = 0; m < m_end; ++m) {
    std::vector<double> cuts{static_cast<double>(m)};
    for (double e : edges_in_unit(m, alpha)) cuts.push_back(e);
    cuts.push_back(m + 1.0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
      if (gap_excess(mid, alpha) > 0.0) continue;
      if (!out.empty() && out.back().hi == cuts[i]) {
        out.back().hi = cuts[i + 1];
      } else {
        out.push_back({cuts[i], cuts[i + 1]});
      }
    }
  }
  return out;
}

double kappa_cap(double alpha) { return 0.5 * std::abs(alpha) + 1.0; }

std::vector<Segment> negative_band_segments(double alpha) {
  std::vector<Segment> out;
  if (alpha >= 0.0) return out;
  const std::vector<double> edges = band_edges_kappa(alpha);
  std::vector<double> cuts{0.0};
  cuts.insert(cuts.end(), edges.begin(), edges.end());
  cuts.push_back(kappa_cap(alpha));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    if (gap_excess_tilde(mid, alpha) <= 0.0) out.push_back({cuts[i], cuts[i + 1]});
  }
  return out;
}

double energy_of(double s) { return s * std::abs(s); }

}  // namespace

bool in_spectrum(double energy, double alpha) {
  if (energy > 0.0) {
    const double k = std::sqrt(energy);
    if (is_integer_wavenumber(k)) return true;
    return std::abs(g(k, alpha)) <= 1.0 + kMembershipTol;
  }
  if (energy < 0.0) return std::abs(g_tilde(std::sqrt(-energy), alpha)) <= 1.0 + kMembershipTol;
  return std::abs(1.0 + alpha * kPi / 4.0) <= 1.0 + kMembershipTol;
}

std::vector<double> band_edges_k(double alpha, double k_max) {
  std::vector<double> out;
  const int m_end = static_cast<int>(std::ceil(k_max));
  for (int m = 0; m < m_end; ++m) {
    for (double e : edges_in_unit(m, alpha)) {
      if (e <= k_max) out.push_back(e);
    }
  }
  return out;
}

std::vector<double> band_edges_kappa(double alpha) {
  std::vector<double> out;
  if (alpha >= 0.0) return out;
  const double cap = kappa_cap(alpha);
  const auto n = static_cast<std::size_t>(kSamplesPerUnit * std::ceil(cap)) + 1;
  const auto grid = roots::linspace(kIntegerOffset, cap, n);
  auto h = [alpha](double x) { return gap_excess_tilde(x, alpha); };
  for (const auto& r : roots::scan_roots(h, grid, 0.0, kResidualTol)) out.push_back(r.x);
  return out;
}

double lowest_band_threshold(double alpha) {
  if (!(alpha < 0.0)) throw InvalidArgument("lowest_band_threshold: requires alpha < 0");
  const auto edges = band_edges_kappa(alpha);
  if (edges.empty()) throw DomainError("lowest_band_threshold: no edge found");
  return -edges.back() * edges.back();
}

BandSpectrum compute_bands(double alpha, double e_max) {
  if (!(e_max > 1.0) || !std::isfinite(e_max)) {
    throw InvalidArgument("compute_bands: e_max must be a finite number > 1");
  }
  BandSpectrum spec{{}, {}, alpha, e_max};
  const double k_top = std::sqrt(e_max);
  for (int n = 1; n <= static_cast<int>(std::floor(k_top)); ++n) {
    spec.flat_eigenvalues.push_back(static_cast<double>(n) * n);
  }
  if (alpha == 0.0) {
    spec.bands.push_back({0.0, e_max, true, false, 0.0, k_top});
    return spec;
  }

  std::vector<Segment> pieces;  // in signed k, ascending
  for (auto s : negative_band_segments(alpha)) pieces.push_back({-s.hi, -s.lo});
  std::reverse(pieces.begin(), pieces.end());
  const int m_end = static_cast<int>(std::ceil(k_top)) + 1;
  for (auto s : positive_band_segments(alpha, m_end)) {
    if (!pieces.empty() && pieces.back().hi == 0.0 && s.lo == 0.0) {
      pieces.back().hi = s.hi;
    } else {
      pieces.push_back(s);
    }
  }
  for (const auto& s : pieces) {
    const double lo = energy_of(s.lo);
    if (lo >= e_max) break;
    spec.bands.push_back({lo, energy_of(s.hi), true, true, s.lo, s.hi});
  }
  return spec;
}

}  // namespace chain

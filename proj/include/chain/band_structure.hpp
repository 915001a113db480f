#pragma once

// Spectrum of the straight (periodic) ring chain: absolutely continuous
// bands plus the flat eigenvalues n^2 carried by single rings.

#include <vector>

namespace chain {

// Band edges are stored both as energies and as signed wavenumbers
// s with E = s|s|, so negative energies E = -kappa^2 carry s = -kappa.
struct Band {
  double e_lo;
  double e_hi;
  bool closed_lo;
  bool closed_hi;
  double k_lo;
  double k_hi;
};

struct BandSpectrum {
  std::vector<Band> bands;
  std::vector<double> flat_eigenvalues;
  double alpha;
  double e_max;
};

bool in_spectrum(double energy, double alpha);

// All bands with e_lo < e_max. The last band is reported whole, including
// the part above e_max. Throws InvalidArgument if e_max <= 1.
BandSpectrum compute_bands(double alpha, double e_max);

// -kappa^2 for the largest root kappa of |g~| = 1. Throws for alpha >= 0.
double lowest_band_threshold(double alpha);

// Non-integer roots of |g(k)| = 1 in (0, k_max], ascending.
std::vector<double> band_edges_k(double alpha, double k_max);

// Roots of |g~(kappa)| = 1, ascending. Empty for alpha >= 0.
std::vector<double> band_edges_kappa(double alpha);

}  // namespace chain

#pragma once

// CSV and JSON serialisation of computed spectra. Numbers in CSV are
// written with 17 significant digits so they round-trip exactly.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "chain/band_structure.hpp"
#include "chain/discrete_spectrum.hpp"
#include "chain/resonance.hpp"

namespace chain {

// One schema for eigenvalue and resonance rows. Missing values are empty
// fields. Negative energies appear as k_re = 0, k_im = kappa.
struct CsvRow {
  std::optional<double> theta;
  std::optional<double> k_re;
  std::optional<double> k_im;
  std::optional<double> energy;
  std::string parity;
  std::optional<int> gap_index;
  std::string branch;
  std::optional<int> multiplicity;
  std::optional<double> residual_abs;
};

inline constexpr const char* kRowHeader =
    "theta,k_re,k_im,energy,parity,gap_index,branch,multiplicity,residual_abs";
inline constexpr const char* kBandHeader = "kind,e_lo,e_hi,k_lo,k_hi,closed_lo,closed_hi";

std::string format_number(double x);

CsvRow row_from_record(const EigenvalueRecord& rec);
// Placeholder row for an angle where a gap has no eigenvalue of a parity.
CsvRow empty_row(double theta, Parity parity, int gap_index);
// gap_index carries n of the singular point the curve was launched from.
std::vector<CsvRow> rows_from_curve(const ResonanceCurve& curve, int gap_index);

void write_rows_csv(std::ostream& os, const std::vector<CsvRow>& rows);
nlohmann::json rows_json(const std::vector<CsvRow>& rows);

void write_bands_csv(std::ostream& os, const BandSpectrum& spec);
nlohmann::json bands_json(const BandSpectrum& spec);

}  // namespace chain

#include "chain/output.hpp"

#include <cmath>
#include <cstdio>
#include <type_traits>

namespace chain {

namespace {

template <class T>
std::string field(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_same_v<T, int>) {
    return std::to_string(*v);
  } else {
    return format_number(*v);
  }
}

template <class T>
nlohmann::json json_field(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string parity_label(const EigenvalueRecord& rec) {
  return rec.multiplicity == 2 ? "+-" : parity_symbol(rec.parity);
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvRow row_from_record(const EigenvalueRecord& rec) {
  CsvRow row;
  row.theta = rec.theta;
  if (rec.negative) {
    row.k_re = 0.0;
    row.k_im = rec.k;
  } else {
    row.k_re = rec.k;
  }
  row.energy = rec.energy;
  row.parity = parity_label(rec);
  row.gap_index = rec.gap_index;
  row.branch = "real";
  row.multiplicity = rec.multiplicity;
  row.residual_abs = rec.residual;
  return row;
}

CsvRow empty_row(double theta, Parity parity, int gap_index) {
  CsvRow row;
  row.theta = theta;
  row.parity = parity_symbol(parity);
  row.gap_index = gap_index;
  return row;
}

std::vector<CsvRow> rows_from_curve(const ResonanceCurve& curve, int gap_index) {
  std::vector<CsvRow> rows;
  rows.reserve(curve.samples.size());
  for (const auto& s : curve.samples) {
    CsvRow row;
    row.theta = s.theta;
    row.k_re = s.k.real();
    if (curve.branch == Branch::Real) row.energy = s.k.real() * s.k.real();
    else row.k_im = s.k.imag();
    row.parity = parity_symbol(curve.parity);
    row.gap_index = gap_index;
    row.branch = branch_name(curve.branch);
    row.residual_abs = s.residual_abs;
    rows.push_back(row);
  }
  return rows;
}

void write_rows_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
  os << kRowHeader << '\n';
  for (const auto& r : rows) {
    os << field(r.theta) << ',' << field(r.k_re) << ',' << field(r.k_im) << ','
       << field(r.energy) << ',' << r.parity << ',' << field(r.gap_index) << ',' << r.branch
       << ',' << field(r.multiplicity) << ',' << field(r.residual_abs) << '\n';
  }
}

nlohmann::json rows_json(const std::vector<CsvRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"theta", json_field(r.theta)},
                   {"k_re", json_field(r.k_re)},
                   {"k_im", json_field(r.k_im)},
                   {"energy", json_field(r.energy)},
                   {"parity", r.parity},
                   {"gap_index", json_field(r.gap_index)},
                   {"branch", r.branch.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.branch)},
                   {"multiplicity", json_field(r.multiplicity)},
                   {"residual_abs", json_field(r.residual_abs)}});
  }
  return out;
}

void write_bands_csv(std::ostream& os, const BandSpectrum& spec) {
  os << kBandHeader << '\n';
  for (const auto& b : spec.bands) {
    os << "band," << format_number(b.e_lo) << ',' << format_number(b.e_hi) << ','
       << format_number(b.k_lo) << ',' << format_number(b.k_hi) << ','
       << (b.closed_lo ? "true" : "false") << ',' << (b.closed_hi ? "true" : "false") << '\n';
  }
  for (double e : spec.flat_eigenvalues) {
    const std::string x = format_number(e);
    const std::string k = format_number(std::sqrt(e));
    os << "flat," << x << ',' << x << ',' << k << ',' << k << ",true,true\n";
  }
}

nlohmann::json bands_json(const BandSpectrum& spec) {
  nlohmann::json bands = nlohmann::json::array();
  for (const auto& b : spec.bands) {
    bands.push_back({{"e_lo", b.e_lo},
                     {"e_hi", b.e_hi},
                     {"k_lo", b.k_lo},
                     {"k_hi", b.k_hi},
                     {"closed_lo", b.closed_lo},
                     {"closed_hi", b.closed_hi}});
  }
  return {{"alpha", spec.alpha},
          {"e_max", spec.e_max},
          {"bands", bands},
          {"flat_eigenvalues", spec.flat_eigenvalues}};
}

}  // namespace chain

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chain/band_structure.hpp"
#include "chain/chain_model.hpp"
#include "chain/discrete_spectrum.hpp"
#include "chain/errors.hpp"
#include "chain/output.hpp"
#include "chain/parallel.hpp"
#include "chain/resonance.hpp"
#include "chain/verify.hpp"

namespace {

using namespace chain;
using nlohmann::json;

enum ExitCode { kOk = 0, kVerifyFail = 1, kUsage = 2, kNumeric = 3 };

struct RunConfig {
  double alpha = 3.0;
  std::optional<double> theta;
  double theta_start = 0.0;
  double theta_stop = kPi;
  int theta_count = 200;
  double e_max = 30.0;
  int n_max = 4;
  std::string parity = "both";
  std::string format = "csv";
  std::string out;
  double tol_root = kRootTol;
  double tol_residual = kResidualTol;
  std::optional<int> criterion;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(const RunConfig& c) {
  if (!std::isfinite(c.alpha)) throw UsageError("--alpha must be finite");
  if (!(c.e_max > 1.0)) throw UsageError("--emax must exceed 1");
  if (c.n_max < 1) throw UsageError("--nmax must be at least 1");
  if (c.theta_count < 2) throw UsageError("--theta-count must be at least 2");
  if (!(c.theta_start >= 0.0 && c.theta_stop <= kPi && c.theta_start < c.theta_stop))
    throw UsageError("theta range must satisfy 0 <= start < stop <= pi");
  if (c.theta && !(*c.theta > 0.0 && *c.theta < kPi)) throw UsageError("--theta must lie in (0, pi)");
  if (c.tol_root < 1e-14 || c.tol_residual < 1e-14) throw UsageError("tolerances must be >= 1e-14");
}

// Half-step offset keeps the default grid off singular angles.
std::vector<double> theta_grid(const RunConfig& c) {
  if (c.theta) return {*c.theta};
  std::vector<double> out;
  const double h = (c.theta_stop - c.theta_start) / c.theta_count;
  for (int i = 0; i < c.theta_count; ++i) out.push_back(c.theta_start + (i + 0.5) * h);
  return out;
}

std::vector<Parity> parities(const RunConfig& c) {
  if (c.parity == "+" || c.parity == "even") return {Parity::Even};
  if (c.parity == "-" || c.parity == "odd") return {Parity::Odd};
  return {Parity::Even, Parity::Odd};
}

void emit(const RunConfig& c, const std::function<void(std::ostream&)>& write) {
  if (c.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream os(c.out, std::ios::binary);
  if (!os) throw UsageError("cannot open " + c.out);
  write(os);
}

int cmd_bands(const RunConfig& c) {
  const BandSpectrum spec = compute_bands(c.alpha, c.e_max);
  emit(c, [&](std::ostream& os) {
    if (c.format == "json") os << bands_json(spec).dump(2) << '\n';
    else write_bands_csv(os, spec);
  });
  return kOk;
}

int cmd_eigenvalues(const RunConfig& c) {
  const auto grid = theta_grid(c);
  const auto wanted = parities(c);
  std::vector<int> gaps;
  if (c.alpha < 0.0) gaps.push_back(0);
  for (const auto& g : gap_intervals(c.alpha, static_cast<int>(std::ceil(std::sqrt(c.e_max))) + 1)) {
    if (g.n >= 1 && g.k_lo * g.k_lo < c.e_max) gaps.push_back(g.n);
  }
  std::vector<std::vector<CsvRow>> per_theta(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double theta = grid[i];
    const auto recs = eigenvalues_at(c.alpha, theta, c.e_max, c.tol_residual);
    auto& rows = per_theta[i];
    for (int n : gaps) {
      for (Parity p : wanted) {
        bool found = false;
        for (const auto& r : recs) {
          if (r.gap_index != n) continue;
          if (r.parity != p && r.multiplicity != 2) continue;
          if (r.multiplicity == 2 && p == Parity::Odd && wanted.size() == 2) {
            found = true;
            continue;
          }
          rows.push_back(row_from_record(r));
          found = true;
        }
        if (!found && n >= 1 && is_singular_angle(theta, n, p)) rows.push_back(empty_row(theta, p, n));
      }
    }
  });
  std::vector<CsvRow> rows;
  for (auto& v : per_theta) rows.insert(rows.end(), v.begin(), v.end());
  emit(c, [&](std::ostream& os) {
    if (c.format == "json") {
      json doc = {{"alpha", c.alpha}, {"e_max", c.e_max}, {"rows", rows_json(rows)}};
      os << doc.dump(2) << '\n';
    } else {
      write_rows_csv(os, rows);
    }
  });
  return kOk;
}

struct Launch {
  SingularPoint sp;
  Branch branch;
};

int cmd_resonances(const RunConfig& c) {
  std::vector<Launch> launches;
  for (Parity p : parities(c)) {
    for (const auto& sp : singular_points(c.n_max, p)) {
      if (sp.theta0 < c.theta_start || sp.theta0 >= c.theta_stop) continue;
      for (Branch b : {Branch::Real, Branch::Upper, Branch::Lower}) launches.push_back({sp, b});
    }
  }
  constexpr double kDelta = 1e-3;
  ContinuationOptions opt;
  opt.newton_tol = c.tol_root;
  std::vector<std::optional<ResonanceCurve>> curves(launches.size());
  std::vector<std::string> errors(launches.size());
  std::vector<Complex> seeds(launches.size());
  parallel_for(launches.size(), [&](std::size_t i) {
    const auto& [sp, b] = launches[i];
    const double theta = sp.theta0 + kDelta;
    const Complex seed = seed_from_singular_point(sp, c.alpha, kDelta, b);
    const NewtonResult nr = newton_resonance(seed, c.alpha, theta, sp.parity, c.tol_root);
    seeds[i] = nr.k;
    if (!nr.converged) {
      errors[i] = "seed did not converge";
      return;
    }
    try {
      curves[i] = continue_curve(theta, nr.k, c.alpha, sp.parity, b, c.theta_stop, opt);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  std::vector<CsvRow> rows;
  json bundle = json::array();
  for (std::size_t i = 0; i < launches.size(); ++i) {
    const auto& [sp, b] = launches[i];
    json meta = {{"parity", parity_symbol(sp.parity)}, {"branch", branch_name(b)},
                 {"n", sp.n}, {"ell", sp.ell}, {"theta0", sp.theta0}, {"k0", sp.k0},
                 {"seed", {seeds[i].real(), seeds[i].imag()}}};
    if (!curves[i]) {
      meta["termination"] = "failed";
      meta["error"] = errors[i];
      meta["samples"] = json::array();
      bundle.push_back(meta);
      continue;
    }
    const auto part = rows_from_curve(*curves[i], sp.n);
    meta["termination"] = curves[i]->termination;
    meta["samples"] = rows_json(part);
    bundle.push_back(meta);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  emit(c, [&](std::ostream& os) {
    if (c.format == "json") {
      json doc = {{"alpha", c.alpha}, {"n_max", c.n_max}, {"theta_stop", c.theta_stop},
                  {"curves", bundle}};
      os << doc.dump(2) << '\n';
    } else {
      write_rows_csv(os, rows);
    }
  });
  for (const auto& e : errors) {
    if (!e.empty()) std::cerr << "warning: partial resonance output: " << e << '\n';
  }
  return kOk;
}

int cmd_verify(const RunConfig& c) {
  std::vector<verify::CriterionResult> results;
  if (c.criterion) results.push_back(verify::run_criterion(*c.criterion));
  else results = verify::run_all();
  bool all = true;
  for (const auto& r : results) {
    std::cerr << verify::summary_line(r) << '\n';
    all = all && r.pass;
  }
  emit(c, [&](std::ostream& os) { os << verify::report_json(results).dump(2) << '\n'; });
  return all ? kOk : kVerifyFail;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--alpha", c.alpha, "Coupling constant");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "Output file (default stdout)");
  sub->add_option("--tol-root", c.tol_root, "Newton tolerance on |F| for resonance poles");
  sub->add_option("--tol-residual", c.tol_residual, "Residual acceptance for real eigenvalues");
}

void add_theta(CLI::App* sub, RunConfig& c) {
  sub->add_option("--theta", c.theta, "Single bending angle in (0, pi)");
  sub->add_option("--theta-start", c.theta_start, "Range start");
  sub->add_option("--theta-stop", c.theta_stop, "Range stop");
  sub->add_option("--theta-count", c.theta_count, "Number of angles (grid offset by half a step)");
  sub->add_option("--parity", c.parity, "+, - or both")
      ->check(CLI::IsMember({"+", "-", "even", "odd", "both"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of a chain of ring graphs with delta couplings"};
  app.footer(
      "Exit codes: 0 ok, 1 verification failed, 2 usage error, 3 numerical failure.\n"
      "CHAIN_SPECTRUM_THREADS caps the number of worker threads.");
  app.require_subcommand(1);
  RunConfig c;

  auto* bands = app.add_subcommand("bands", "Band spectrum of the straight chain");
  add_common(bands, c);
  bands->add_option("--emax", c.e_max, "Energy cutoff (> 1)");

  auto* eig = app.add_subcommand("eigenvalues", "Gap eigenvalues of the bent chain");
  add_common(eig, c);
  add_theta(eig, c);
  eig->add_option("--emax", c.e_max, "Energy cutoff (> 1)");

  auto* res = app.add_subcommand("resonances", "Resonance trajectories in the complex k plane");
  add_common(res, c);
  add_theta(res, c);
  res->add_option("--nmax", c.n_max, "Largest singular point index");

  auto* ver = app.add_subcommand("verify", "Run the acceptance checks");
  ver->add_option("--criterion", c.criterion, "Run one criterion (1-12)")->check(CLI::Range(1, 12));
  ver->add_option("--out", c.out, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    validate(c);
    if (*bands) return cmd_bands(c);
    if (*eig) return cmd_eigenvalues(c);
    if (*res) return cmd_resonances(c);
    return cmd_verify(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumeric;
  }
}

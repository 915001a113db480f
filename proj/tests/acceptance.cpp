// Acceptance driver: one PASS/FAIL line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only
//   acceptance --json FILE     also write the machine-readable report

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "chain/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::optional<int> criterion;
  std::string json_path;
  app.add_option("--criterion", criterion, "Criterion number")
      ->check(CLI::Range(1, chain::verify::kCriterionCount));
  app.add_option("--json", json_path, "Write the report as JSON");
  CLI11_PARSE(app, argc, argv);

  std::vector<chain::verify::CriterionResult> results;
  if (criterion) results.push_back(chain::verify::run_criterion(*criterion));
  else results = chain::verify::run_all();

  int failed = 0;
  for (const auto& r : results) {
    std::cout << chain::verify::summary_line(r) << '\n';
    if (!r.pass) ++failed;
  }
  std::cout << (results.size() - failed) << '/' << results.size() << " criteria passed\n";
  if (!json_path.empty()) {
    std::ofstream(json_path) << chain::verify::report_json(results).dump(2) << '\n';
  }
  return failed == 0 ? 0 : 1;
}

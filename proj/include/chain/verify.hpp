#pragma once

// Numerical acceptance checks. Each criterion recomputes its quantities
// from scratch, compares against pinned tolerances and a runtime budget,
// and reports what it measured.

#include <string>
#include <vector>

#include "json.hpp"

namespace chain::verify {

inline constexpr int kCriterionCount = 12;

struct CriterionResult {
  int id;
  std::string title;
  bool pass;
  double seconds;
  double time_limit;
  std::string detail;
  nlohmann::json measured;
};

// Throws InvalidArgument for ids outside 1..kCriterionCount.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();

// "PASS C01 <title> | <detail> | 0.012 s"
std::string summary_line(const CriterionResult& r);
nlohmann::json report_json(const std::vector<CriterionResult>& results);

}  // namespace chain::verify

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace zetaline {

enum class Status { kPass, kFail, kDiagnostic };
const char* status_name(Status s);

struct CriterionResult {
  int id = 0;
  std::string title;
  Status status = Status::kFail;
  std::string detail;              // the measured quantities behind the verdict
  std::vector<std::string> notes;  // informational lines, never part of the verdict
  double seconds = 0;
};

struct AcceptanceOptions {
  double T = 1e5;       // cutoff for the critical-line quadratures
  double bsy_T = 1e4;
  std::string zero_file;  // empty: bundled ordinates
  std::vector<int> only;  // empty: criteria 1..13
};

// Runs the criteria in order. A NumericError inside a criterion turns it into
// a failure carrying the error text. `report` sees each result as it lands.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& report = {});

// "criterion  6 FAIL  cross moments: ..." on one line.
std::string format_line(const CriterionResult& r);
std::string to_json(const std::vector<CriterionResult>& results);

// No kFail among the results.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace zetaline

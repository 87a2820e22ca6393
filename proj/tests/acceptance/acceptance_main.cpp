#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "zetaline/acceptance.hpp"

int main(int argc, char** argv) {
  zetaline::AcceptanceOptions opt;
  CLI::App app{"Runs acceptance criteria 1-13"};
  app.add_option("--only", opt.only, "criterion ids to run");
  app.add_option("--T", opt.T, "critical-line quadrature cutoff");
  app.add_option("--zeros", opt.zero_file, "zero-ordinate file");
  CLI11_PARSE(app, argc, argv);
  auto results = zetaline::run_acceptance(opt, [](const zetaline::CriterionResult& r) {
    std::cout << zetaline::format_line(r) << "\n";
    for (const auto& n : r.notes) std::cout << "    note: " << n << "\n";
    std::cout.flush();
  });
  int failed = 0;
  for (const auto& r : results) failed += r.status == zetaline::Status::kFail;
  std::cout << "acceptance: " << results.size() - failed << " of " << results.size() << " criteria not failing, " << failed
            << " failing\n";
  return failed ? 1 : 0;
}

#pragma once

#include <map>
#include <string>
#include <vector>

namespace cmek::st {

// One acceptance check.  Names are "c<criterion>.<module>.<what>" so that a
// substring filter selects either a whole criterion ("c5") or a module
// ("eklattice"), and reports can aggregate per criterion.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // one-line outcome: worst deviation, timings, values
  double seconds = 0;
};

struct SelftestReport {
  std::vector<CheckResult> checks;
  double seconds = 0;

  bool all_pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Runs the acceptance battery against the frozen reference files in
// golden_dir.  filter, when nonempty, keeps only checks whose name contains
// it as a substring.  Never throws: a check that raises is reported as
// failed with the exception text.
SelftestReport run_selftest(const std::string& golden_dir,
                            const std::string& filter = "");

// Wall-clock budgets (seconds) per acceptance criterion number; criteria not
// listed have per-item budgets enforced inside their checks.  Criterion 10 is
// the whole battery.
std::map<int, double> criterion_time_budgets();

}  // namespace cmek::st

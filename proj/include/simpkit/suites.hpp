// Named check suites over the shared fixtures. Each returns one Report whose
// details list every individual check; the acceptance binary and the
// command-line tool both run them.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "simpkit/report.hpp"

namespace sk {

Report suite_identities();
Report suite_dold_kan();
Report suite_dg_nerve();
Report suite_cartesian();
Report suite_twisted();
Report suite_anodyne();
Report suite_loop();
Report suite_descent();

struct SuiteEntry {
  int criterion;
  std::string name;
  std::function<Report()> run;
};
// Criteria 1..8 in order.
const std::vector<SuiteEntry>& acceptance_suites();
// Throws std::invalid_argument for an unknown name.
Report run_suite(const std::string& name);

}  // namespace sk
